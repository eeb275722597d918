use thiserror::Error;

/// Errors raised by state construction, walk evolution and the magic measures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("state has zero norm")]
    ZeroState,

    #[error("layout mismatch: {0}")]
    Layout(String),

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    Hermiticity { residual: f64 },

    #[error("walker {walker} reached the lattice boundary at site {site}")]
    Wrap { walker: usize, site: usize },

    #[error("lattice of {lattice} sites cannot hold {steps} steps without wrapping (need at least {required})")]
    LatticeTooSmall { lattice: usize, steps: usize, required: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

pub type Result<T, E = WalkError> = std::result::Result<T, E>;
