use thiserror::Error;

/// Failures raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry:e})")]
    NonHermitianInput { max_asymmetry: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("xy-plane coupling J is zero; closed-form expressions divide by J")]
    ZeroXyCoupling,
    #[error("{name} must be finite, got {value}")]
    NonFiniteParameter { name: &'static str, value: f64 },
    #[error("uniform field B must be non-negative, got {0}")]
    NegativeUniformField(f64),
    #[error("NonPositiveTemperature: temperature must be > 0, got {0}")]
    NonPositiveTemperature(f64),
    #[error("Overflow: temperature {0:e} is below the exponent guard")]
    Overflow(f64),
    #[error("state is not normalized (norm squared {0})")]
    NotNormalized(f64),
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("density matrix is not an X-state (stray entry {magnitude:e} at ({row}, {col}))")]
    NotXState { row: usize, col: usize, magnitude: f64 },
    #[error("invalid axis: {0}")]
    InvalidAxis(String),
    #[error("unknown figure {0}; expected 1..=5")]
    UnknownFigure(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
