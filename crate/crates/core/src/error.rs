use thiserror::Error;

/// Errors produced by state construction, entanglement analysis, and the
/// verification harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("register must contain at least one qubit")]
    EmptyRegister,

    #[error("{n} qubits exceed the supported register size of {max}")]
    RegisterTooLarge { n: usize, max: usize },

    #[error("amplitude vector has length {actual}, expected {expected}")]
    AmplitudeLength { expected: usize, actual: usize },

    #[error("state norm² deviates from 1 by {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("amplitude at index {0} is not finite")]
    NonFiniteAmplitude(usize),

    #[error("basis index {index} out of range for {n} qubit(s)")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("duplicate basis index {0} in marked set")]
    DuplicateIndex(usize),

    #[error("marked count {m} out of range [{lo}, {hi}]")]
    MarkedCountOutOfRange { m: usize, lo: usize, hi: usize },

    #[error("marked count must be even, got {0}")]
    OddMarkedCount(usize),

    #[error("qubit counts differ: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("marked-set size {marked} does not match the parameter set size {params}")]
    InconsistentMarkedCount { marked: usize, params: usize },

    #[error("oracle states are indexed from 1")]
    OracleIndexZero,

    #[error("oracle file line {line}: {reason}")]
    OracleParse { line: usize, reason: String },

    #[error("invalid state file: {0}")]
    StateFile(String),

    #[error("bipartition mask must be a nonempty proper subset of the {n} qubit(s)")]
    InvalidBipartition { n: usize },

    #[error("invalid rank policy: {0}")]
    InvalidPolicy(String),

    #[error("cannot compute the rank of a zero state")]
    ZeroState,

    #[error("singular value decomposition did not converge")]
    SvdFailure,

    #[error("{n} qubits exceed the analysis cap of {cap}; raise the cap to override")]
    AnalysisCapExceeded { n: usize, cap: usize },

    #[error("amplitude at index {0} is not a ±2^(-n/2) sign pattern")]
    NotSignPattern(usize),

    #[error("factors fail to reconstruct the state (max deviation {deviation:.3e})")]
    FactorizationInconsistent { deviation: f64 },

    #[error("enumerating {instances} instances exceeds the feasibility limit of {limit}")]
    EnumerationTooLarge { instances: u128, limit: u128 },

    #[error("check {check} does not cover marked count {m}: {reason}")]
    CheckDomain {
        check: String,
        m: usize,
        reason: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
