//! Session files and the commands that run against them.

mod grammar;
mod run;

pub use grammar::{
    canonical_list, parse_session, print_chain, print_ideal, print_session, ChainDecl, Decl, ExtensionDecl, IdealDecl,
    RingDecl, Session, WitnessDecl, WitnessSpec,
};
pub use run::{error_report, run_command, Command, Options, Workspace};
