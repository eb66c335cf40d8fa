//! Finite extensions `A ⊆ B`, their traces `τ_{B/A}`, ideal-trace samples,
//! generic étaleness, and splinter obstruction reports built from chains.

pub mod chain;
pub mod etale;
pub mod extension;
pub mod trace;

pub use chain::{
    check_inclusion, splinter_report, splinter_report_with, trace_chain, trace_chain_with, ChainReport,
    ExtensionSummary, SplinterReport, Verdict,
};
pub use etale::{verify_generically_etale, EtaleCertificate};
pub use extension::{FiniteExtension, FinitenessCertificate};
pub use trace::{default_family, ideal_trace_sample, split_check, trace_ideal, IdealTraceSample};
