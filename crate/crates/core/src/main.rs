use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use splincal::error::Error;
use splincal::exec::{init_threads, Exec};
use splincal::session::{error_report, parse_session, run_command, Command, Options};

#[derive(Parser, Debug)]
#[command(
    name = "splincal",
    version,
    about = "Frobenius and splinter computations over finite fields"
)]
struct Cli {
    /// fpure, compatible, smallest, star, frobclosure, trace, idealtrace,
    /// contract, etale, chain, splinter or print
    command: String,
    #[arg(long)]
    session: PathBuf,
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    emax: Option<u32>,
    /// Comma-separated ideal names.
    #[arg(long, value_delimiter = ',')]
    family: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn threads() -> Result<usize, Error> {
    match std::env::var("SPLINCAL_THREADS") {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::InvalidArgument(format!(
                "SPLINCAL_THREADS must be a positive integer, got `{v}`"
            ))),
        },
    }
}

fn run(cli: &Cli) -> Result<Value, Error> {
    let cmd: Command = cli.command.parse()?;
    let exec = match threads()? {
        1 => Exec::Sequential,
        n => {
            init_threads(n);
            Exec::Parallel
        }
    };
    Exec::set_default_mode(exec);
    let text =
        std::fs::read_to_string(&cli.session).map_err(|e| Error::Io(format!("{}: {e}", cli.session.display())))?;
    let session = parse_session(&text)?;
    let opts = Options {
        target: cli.target.clone(),
        emax: cli.emax,
        family: cli.family.clone(),
        exec: Some(exec),
    };
    run_command(&session, cmd, &opts)
}

fn emit(cli: &Cli, report: &Value) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(report).expect("reports are plain JSON");
    text.push('\n');
    match &cli.json {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match run(&cli) {
        Ok(r) => (r, 0),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            (error_report(&cli.command, &e), e.exit_code())
        }
    };
    if let Err(e) = emit(&cli, &report) {
        eprintln!("error[{}]: {e}", e.code());
        return ExitCode::from(e.exit_code() as u8);
    }
    ExitCode::from(code as u8)
}
