use thiserror::Error;

/// Every failure the toolkit can report. Each variant maps to a stable
/// machine-readable code and a process exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("characteristic {0} is not a prime in [2, 2^31 - 1]")]
    NonPrimeCharacteristic(u64),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("variable count mismatch: expected {expected}, got {got}")]
    VariableCount { expected: usize, got: usize },
    #[error("ideal does not contain the defining ideal of the ring")]
    NotContainingBase,
    #[error("defining ideal is not proper or not contained in the maximal ideal")]
    BadDefiningIdeal,
    #[error("extension is not module-finite: no pure power of `{0}` among leading terms")]
    NotModuleFinite(String),
    #[error("base ring does not embed into the extension: {0}")]
    NotInjective(String),
    #[error("finiteness certificate missing for extension `{0}`")]
    MissingCertificate(String),
    #[error("operation requires a domain")]
    DomainRequired,
    #[error("seed ideal is zero in the ring")]
    ZeroSeed,
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("invalid prime decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("chain inclusion not certified: {0}")]
    InclusionUncertified(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SYNTAX_ERROR",
            Error::UnknownIdentifier(_) => "UNKNOWN_IDENTIFIER",
            Error::DuplicateName(_) => "DUPLICATE_NAME",
            Error::NonPrimeCharacteristic(_) => "NON_PRIME_CHARACTERISTIC",
            Error::RingMismatch(_) => "RING_MISMATCH",
            Error::ExponentOverflow => "EXPONENT_OVERFLOW",
            Error::VariableCount { .. } => "VARIABLE_COUNT_MISMATCH",
            Error::NotContainingBase => "NOT_CONTAINING_BASE",
            Error::BadDefiningIdeal => "BAD_DEFINING_IDEAL",
            Error::NotModuleFinite(_) => "NOT_MODULE_FINITE",
            Error::NotInjective(_) => "NOT_INJECTIVE",
            Error::MissingCertificate(_) => "MISSING_CERTIFICATE",
            Error::DomainRequired => "DOMAIN_REQUIRED",
            Error::ZeroSeed => "ZERO_SEED",
            Error::OutOfScope(_) => "OUT_OF_SCOPE",
            Error::InvalidDecomposition(_) => "INVALID_DECOMPOSITION",
            Error::InclusionUncertified(_) => "INCLUSION_UNCERTIFIED",
            Error::InvalidWitness(_) => "INVALID_WITNESS",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
            Error::Io(_) => "IO_ERROR",
        }
    }

    /// 2 for anything caught while reading the session, 3 for algebraic
    /// precondition failures, 4 for out-of-scope requests. An unreadable
    /// session file counts as an input error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::UnknownIdentifier(_)
            | Error::DuplicateName(_)
            | Error::NonPrimeCharacteristic(_)
            | Error::InvalidArgument(_)
            | Error::Io(_) => 2,
            Error::OutOfScope(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
