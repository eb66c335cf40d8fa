//! Frobenius bracket powers and roots, Fedder splittings, compatible ideals
//! and Frobenius closure for rings `S/I₀`.

pub mod bracket;
pub mod closure;
pub mod fedder;
pub mod lattice;
pub mod ring;

pub use bracket::{frobenius_power_ideal, frobenius_root, in_bracket_maximal};
pub use closure::{frobenius_closure, frobenius_closure_by_preimage, ClosureRoute, FrobeniusClosure, DEFAULT_EMAX};
pub use fedder::{compatible_test, fedder_fpure, star_closure, FedderResult, Provenance, SplittingWitness};
pub use lattice::{
    enumerate_compatible, enumerate_compatible_with, jacobian_seed, smallest_nonzero_compatible, CompatibleLattice,
    LatticeMember, SmallestCompatible,
};
pub use ring::{DomainCertificate, QuotientRing};
