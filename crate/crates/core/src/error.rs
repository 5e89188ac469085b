use thiserror::Error;

/// Why a residue list and period do not form a periodic admissible set.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeriodicSetError {
    #[error("residue list is empty")]
    Empty,
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("smallest residue must be 0, got {0}")]
    MissingZero(usize),
    #[error("residue {residue} is not below the period {period}")]
    ResidueTooLarge { residue: usize, period: usize },
    #[error("residues must be strictly increasing (duplicate or out of order at {0})")]
    NotIncreasing(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("series has zero constant term and is not invertible")]
    NonUnit,
    #[error("multisection residue {residue} out of range for modulus {modulus}")]
    ResidueOutOfRange { residue: usize, modulus: usize },
    #[error("invalid periodic set: {0}")]
    InvalidPeriodicSet(#[from] PeriodicSetError),
    #[error("shift arguments ({j}, {q}) out of range for period {period}")]
    ShiftOutOfRange { j: usize, q: usize, period: usize },
    #[error("half-time {0} is not an admissible residue of the set")]
    NotAdmissible(usize),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("no unit pivot in column {0}; matrix is singular over the series ring")]
    Singular(usize),
    #[error("quarter partition needs an even side length, got {0}")]
    OddCirculant(usize),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("internal identity violated: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
