use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::frobenius::{
    compatible_test, enumerate_compatible_with, fedder_fpure, frobenius_closure, smallest_nonzero_compatible,
    star_closure, QuotientRing, SplittingWitness, DEFAULT_EMAX,
};
use crate::groebner::{Ideal, PrimeHints};
use crate::splinter::{
    default_family, ideal_trace_sample, splinter_report_with, trace_chain_with, trace_ideal, verify_generically_etale,
    FiniteExtension,
};

use super::grammar::{print_session, Decl, Session, WitnessSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Fpure,
    Compatible,
    Smallest,
    Star,
    Frobclosure,
    Trace,
    Idealtrace,
    Contract,
    Etale,
    Chain,
    Splinter,
    Print,
}

impl Command {
    pub const ALL: [Command; 12] = [
        Command::Fpure,
        Command::Compatible,
        Command::Smallest,
        Command::Star,
        Command::Frobclosure,
        Command::Trace,
        Command::Idealtrace,
        Command::Contract,
        Command::Etale,
        Command::Chain,
        Command::Splinter,
        Command::Print,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Fpure => "fpure",
            Command::Compatible => "compatible",
            Command::Smallest => "smallest",
            Command::Star => "star",
            Command::Frobclosure => "frobclosure",
            Command::Trace => "trace",
            Command::Idealtrace => "idealtrace",
            Command::Contract => "contract",
            Command::Etale => "etale",
            Command::Chain => "chain",
            Command::Splinter => "splinter",
            Command::Print => "print",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub target: Option<String>,
    pub emax: Option<u32>,
    pub family: Vec<String>,
    pub exec: Option<Exec>,
}

/// The algebra objects behind a session, built on demand.
pub struct Workspace {
    session: Session,
    ring: QuotientRing,
    extensions: HashMap<String, FiniteExtension>,
}

fn gens(i: &Ideal) -> Vec<String> {
    i.reduced().iter().map(|g| g.to_string()).collect()
}

impl Workspace {
    pub fn new(session: Session) -> Result<Self> {
        let decl = session
            .ring()
            .ok_or_else(|| Error::InvalidArgument("the session declares no ring".into()))?;
        let mut hints = PrimeHints::new();
        for i in session.ideals().filter(|i| i.prime) {
            hints.claim_prime(Ideal::new(&decl.ring, i.gens.clone()).sum(&Ideal::new(&decl.ring, decl.ideal.clone())));
        }
        let mut ring = QuotientRing::new(&decl.ring, Ideal::new(&decl.ring, decl.ideal.clone()))?.with_hints(hints);
        if decl.domain {
            ring = ring.mark_domain()?;
        }
        Ok(Workspace {
            session,
            ring,
            extensions: HashMap::new(),
        })
    }

    pub fn session(&self) -> &Session {
        &self.session
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    fn ideal(&self, name: &str) -> Result<Ideal> {
        match self.session.get(name) {
            Some(Decl::Ideal(i)) => Ok(self.ring.lift(&Ideal::new(self.ring.ring(), i.gens.clone()))),
            _ => Err(Error::UnknownIdentifier(name.to_string())),
        }
    }

    pub fn extension(&mut self, name: &str) -> Result<&FiniteExtension> {
        if !self.extensions.contains_key(name) {
            let Some(Decl::Extension(e)) = self.session.get(name) else {
                return Err(Error::UnknownIdentifier(name.to_string()));
            };
            let ext = FiniteExtension::new(&e.name, &self.ring, e.adjoined.clone(), e.relations.clone())?;
            ext.verify_module_finite()?;
            self.extensions.insert(name.to_string(), ext);
        }
        Ok(&self.extensions[name])
    }

    fn chain(&mut self, name: &str) -> Result<Vec<FiniteExtension>> {
        let Some(Decl::Chain(c)) = self.session.get(name) else {
            return Err(Error::UnknownIdentifier(name.to_string()));
        };
        let members = c.members.clone();
        members.iter().map(|m| self.extension(m).cloned()).collect()
    }

    fn witness(&self, name: &str) -> Result<SplittingWitness> {
        let Some(Decl::Witness(w)) = self.session.get(name) else {
            return Err(Error::UnknownIdentifier(name.to_string()));
        };
        match &w.spec {
            WitnessSpec::Poly(u) => SplittingWitness::new(&self.ring, u.clone()),
            WitnessSpec::Auto => self.auto_witness(),
        }
    }

    fn auto_witness(&self) -> Result<SplittingWitness> {
        fedder_fpure(&self.ring)?
            .witness
            .ok_or_else(|| Error::InvalidWitness("the ring is not F-pure at m, so there is no Fedder witness".into()))
    }

    /// The first declared witness, or Fedder's.
    fn default_witness(&self) -> Result<SplittingWitness> {
        match self.session.witnesses().next() {
            Some(w) => self.witness(&w.name),
            None => self.auto_witness(),
        }
    }

    fn all_witnesses(&self) -> Result<Vec<SplittingWitness>> {
        self.session.witnesses().map(|w| self.witness(&w.name)).collect()
    }

    fn default_extension(&self) -> Result<String> {
        self.session
            .extensions()
            .next()
            .map(|e| e.name.clone())
            .ok_or_else(|| Error::InvalidArgument("the session declares no extension".into()))
    }

    fn default_chain(&self) -> Result<String> {
        self.session
            .chains()
            .next()
            .map(|c| c.name.clone())
            .ok_or_else(|| Error::InvalidArgument("the session declares no chain".into()))
    }

    fn family(&self, opts: &Options) -> Result<Option<Vec<Ideal>>> {
        if opts.family.is_empty() {
            return Ok(None);
        }
        opts.family
            .iter()
            .map(|n| self.ideal(n))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    fn require_target(opts: &Options, what: &str) -> Result<String> {
        opts.target
            .clone()
            .ok_or_else(|| Error::InvalidArgument(format!("this command needs --target <{what}>")))
    }

    fn execute(&mut self, cmd: Command, opts: &Options, warnings: &mut Vec<String>) -> Result<Value> {
        let exec = opts.exec.unwrap_or_default();
        match cmd {
            Command::Print => Ok(json!({ "text": print_session(&self.session) })),
            Command::Fpure => {
                let f = fedder_fpure(&self.ring)?;
                Ok(json!({
                    "fpure": f.fpure,
                    "witness": f.witness.as_ref().map(|w| w.u().to_string()),
                    "colon": f.colon.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                }))
            }
            Command::Compatible => {
                let w = match &opts.target {
                    Some(t) => self.witness(t)?,
                    None => self.default_witness()?,
                };
                let lat = enumerate_compatible_with(&w, &self.ring, exec)?;
                if lat.unverified_minimality {
                    warnings.push("UNVERIFIED_MINIMALITY".into());
                }
                if lat.truncated {
                    warnings.push("TRUNCATED".into());
                }
                if !lat.prime_count_bound_ok {
                    warnings.push("PRIME_COUNT_BOUND_EXCEEDED".into());
                }
                let members: Vec<Value> = lat
                    .members
                    .iter()
                    .map(|m| {
                        json!({
                            "generators": gens(&m.ideal),
                            "compatible": m.compatible,
                            "prime": m.prime,
                            "coheight": m.coheight,
                            "radical": m.radical,
                        })
                    })
                    .collect();
                let counts: serde_json::Map<String, Value> = lat
                    .prime_counts
                    .iter()
                    .map(|(d, c)| (d.to_string(), json!(c)))
                    .collect();
                Ok(json!({
                    "witness": w.u().to_string(),
                    "size": lat.len(),
                    "members": members,
                    "edges": lat.edges,
                    "complete": lat.complete,
                    "prime_counts": counts,
                    "prime_count_bound_ok": lat.prime_count_bound_ok,
                }))
            }
            Command::Smallest => {
                let seed = opts.target.as_deref().map(|t| self.ideal(t)).transpose()?;
                let w = self.default_witness()?;
                let s = smallest_nonzero_compatible(&w, &self.ring, seed.as_ref())?;
                if !s.verified {
                    warnings.push("UNVERIFIED_MINIMALITY".into());
                }
                Ok(json!({
                    "witness": w.u().to_string(),
                    "generators": gens(&s.ideal),
                    "verified": s.verified,
                    "rounds": s.rounds,
                }))
            }
            Command::Star => {
                let j = self.ideal(&Self::require_target(opts, "ideal")?)?;
                let w = self.default_witness()?;
                let was = compatible_test(&w, &j)?;
                let star = star_closure(&w, &j);
                Ok(json!({
                    "witness": w.u().to_string(),
                    "ideal": gens(&j),
                    "compatible": was,
                    "star": gens(&star),
                }))
            }
            Command::Frobclosure => {
                let i = self.ideal(&Self::require_target(opts, "ideal")?)?;
                let emax = opts.emax.unwrap_or(DEFAULT_EMAX);
                let c = frobenius_closure(&self.ring, &i, emax)?;
                if c.stabilized_at.is_none() {
                    warnings.push("NOT_STABILIZED".into());
                }
                Ok(json!({
                    "ideal": gens(&i),
                    "closure": gens(&c.closure),
                    "stabilized_at": c.stabilized_at,
                    "levels": c.levels.iter().map(gens).collect::<Vec<_>>(),
                    "route": c.route,
                    "emax": emax,
                }))
            }
            Command::Trace => {
                let name = opts.target.clone().map_or_else(|| self.default_extension(), Ok)?;
                let b = self.extension(&name)?;
                let tau = trace_ideal(b)?;
                Ok(json!({
                    "extension": name,
                    "generators": gens(&tau),
                    "split": tau.is_unit(),
                    "module_generators": b.certificate()?.module_generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                }))
            }
            Command::Idealtrace => {
                let name = opts.target.clone().map_or_else(|| self.default_extension(), Ok)?;
                let family = self.family(opts)?;
                let b = self.extension(&name)?;
                let family = family.unwrap_or_else(|| default_family(b, 3));
                let s = ideal_trace_sample(b, &family)?;
                if !s.non_primary.is_empty() {
                    warnings.push("NON_PRIMARY_FAMILY_MEMBER".into());
                }
                let tau = trace_ideal(b)?;
                Ok(json!({
                    "extension": name,
                    "family": family.iter().map(gens).collect::<Vec<_>>(),
                    "generators": gens(&s.ideal),
                    "non_primary": s.non_primary,
                    "trace_contained": s.ideal.contains_ideal(&tau),
                }))
            }
            Command::Contract => {
                let name = opts.target.clone().map_or_else(|| self.default_extension(), Ok)?;
                let family = match self.family(opts)? {
                    Some(f) => f,
                    None => {
                        let declared: Vec<String> = self.session.ideals().map(|i| i.name.clone()).collect();
                        if declared.is_empty() {
                            vec![self.ring.maximal_ideal()]
                        } else {
                            declared.iter().map(|n| self.ideal(n)).collect::<Result<_>>()?
                        }
                    }
                };
                let b = self.extension(&name)?;
                let rows = family
                    .iter()
                    .map(|i| {
                        let c = b.contract_ideal(i)?;
                        Ok(json!({
                            "ideal": gens(i),
                            "contraction": gens(&c),
                            "unchanged": c.equals(i),
                        }))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(json!({ "extension": name, "contractions": rows }))
            }
            Command::Etale => {
                let name = opts.target.clone().map_or_else(|| self.default_extension(), Ok)?;
                let b = self.extension(&name)?;
                let c = verify_generically_etale(b)?;
                Ok(json!({
                    "extension": name,
                    "generically_etale": c.verdict,
                    "determinant": c.determinant.map(|d| d.to_string()),
                    "relation_rows": c.relation_rows,
                    "jacobian": c.jacobian.iter().map(|r| r.iter().map(|g| g.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                }))
            }
            Command::Chain => {
                let name = opts.target.clone().map_or_else(|| self.default_chain(), Ok)?;
                let chain = self.chain(&name)?;
                let r = trace_chain_with(&self.ring, &chain, exec)?;
                if !r.descending {
                    warnings.push("NOT_DESCENDING".into());
                }
                Ok(json!({
                    "chain": name,
                    "traces": r.traces.iter().map(gens).collect::<Vec<_>>(),
                    "split": r.split,
                    "descending": r.descending,
                    "stabilized_at": r.stabilized_at,
                    "obstruction": gens(&r.obstruction),
                }))
            }
            Command::Splinter => {
                let chain = match &opts.target {
                    Some(t) => self.chain(t)?,
                    None => {
                        let first = self.session.chains().next().map(|c| c.name.clone());
                        match first {
                            Some(n) => self.chain(&n)?,
                            None => Vec::new(),
                        }
                    }
                };
                let witnesses = self.all_witnesses()?;
                let r = splinter_report_with(&self.ring, &chain, &witnesses, exec)?;
                warnings.extend(r.warnings.iter().cloned());
                let extensions: Vec<Value> = r
                    .extensions
                    .iter()
                    .map(|s| {
                        json!({
                            "name": s.name,
                            "trace": gens(&s.trace),
                            "split": s.split,
                            "radical": s.radical,
                            "compatible": s.compatible,
                            "sample": gens(&s.sample),
                            "trace_in_sample": s.trace_in_sample,
                            "polynomial_ring": s.polynomial_ring,
                        })
                    })
                    .collect();
                Ok(json!({
                    "verdict": r.verdict,
                    "fpure": r.fpure,
                    "locus": r.locus.as_ref().map(gens),
                    "traces": r.chain.traces.iter().map(gens).collect::<Vec<_>>(),
                    "stabilized_at": r.chain.stabilized_at,
                    "obstruction": gens(&r.chain.obstruction),
                    "extensions": extensions,
                    "witnesses": r.witnesses.iter().map(|w| json!({"u": w.u().to_string(), "provenance": w.provenance()})).collect::<Vec<_>>(),
                    "obstruction_radical": r.obstruction_radical,
                    "obstruction_compatible": r.obstruction_compatible,
                    "obstruction_in_samples": r.obstruction_in_samples,
                    "notes": r.notes,
                }))
            }
        }
    }
}

fn inputs(session: &Session, opts: &Options) -> Value {
    json!({
        "session": print_session(session),
        "target": opts.target,
        "emax": opts.emax,
        "family": opts.family,
    })
}

/// Run one command and build its JSON report. Keys come out sorted, so the
/// text is byte-identical across runs apart from `wall_time_ms`.
pub fn run_command(session: &Session, cmd: Command, opts: &Options) -> Result<Value> {
    let start = Instant::now();
    let mut warnings = Vec::new();
    let mut ws = Workspace::new(session.clone())?;
    let result = ws.execute(cmd, opts, &mut warnings)?;
    Ok(json!({
        "command": cmd.name(),
        "inputs": inputs(session, opts),
        "result": result,
        "warnings": warnings,
        "wall_time_ms": start.elapsed().as_millis() as u64,
    }))
}

pub fn error_report(command: &str, err: &Error) -> Value {
    json!({
        "command": command,
        "error": {
            "code": err.code(),
            "message": err.to_string(),
            "exit_code": err.exit_code(),
        },
    })
}
