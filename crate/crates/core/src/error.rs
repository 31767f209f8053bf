use thiserror::Error;

use crate::algebra::Subsystem;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("subsystem {0:?} appears more than once")]
    DuplicateSubsystem(Subsystem),

    #[error("subsystem {0:?} is not part of the basis")]
    UnknownSubsystem(Subsystem),

    #[error("basis labels must be distinct and in canonical order for {0:?}")]
    NonCanonicalBasis(Subsystem),

    #[error("amplitude count {got} does not match basis dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("kept subsystems must be a nonempty proper subset of the basis")]
    InvalidTraceSelection,

    #[error("partial transpose needs a bipartite density matrix, got {0} subsystems")]
    NotBipartite(usize),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("not a state: eigenvalue {0:e} is below the positivity tolerance")]
    NotAState(f64),

    #[error("acceleration parameter q = {0} is outside the allowed range")]
    InvalidRapidityInput(f64),

    #[error("squeezing parameter r = {r} is invalid for {kind:?}")]
    InvalidSqueezing { kind: crate::params::FieldKind, r: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("Fock cutoff would exceed the hard cap of {0} levels")]
    TruncationCap(usize),

    #[error("series did not converge after {terms} terms (partial value {partial})")]
    SeriesNoConvergence { terms: usize, partial: f64 },

    #[error("block sum reached d_max = {d_max} without convergence (partial value {partial})")]
    BlockSumNoConvergence { d_max: usize, partial: f64 },

    #[error("closed form and constructive oracle disagree by {discrepancy:e} (tolerance {tolerance:e})")]
    OracleMismatch { discrepancy: f64, tolerance: f64 },

    #[error("partial transpose has eigenvalue {0:e}; expected a PPT state")]
    UnexpectedNegativity(f64),

    #[error("unknown preset `{name}`; valid presets: {valid}")]
    UnknownPreset { name: String, valid: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("csv error: {0}")]
    Csv(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
