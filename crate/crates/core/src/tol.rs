//! Numerical tolerances shared across modules.
//!
//! All model quantities are O(1) in dimensionless units, so the thresholds
//! below are absolute.

/// Largest accepted `|M[i][j] - conj(M[j][i])|` for a Hermitian matrix.
pub const HERMITICITY: f64 = 1e-12;

/// Eigenvalues down to `-PSD_CLAMP` are treated as roundoff and set to zero.
pub const PSD_CLAMP: f64 = 1e-12;

/// Reconstruction and eigen-residual tolerance.
pub const EIGEN: f64 = 1e-10;

/// Gram-matrix deviation tolerance for eigenvectors.
pub const ORTHONORMALITY: f64 = 1e-10;

/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// (scaled by `max(1, ||M||_F)`).
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;

/// Sweep budget for the cyclic Jacobi iterations.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Unit trace and Hermiticity of density matrices.
pub const DENSITY: f64 = 1e-12;

/// Normalization check for [`crate::model::PureState`].
pub const PURE_NORM: f64 = 1e-9;

/// `|eta - (B - Jz)|` at or below this is a phase boundary.
pub const PHASE_BOUNDARY: f64 = 1e-12;

/// Entries outside the X pattern below this magnitude are ignored.
pub const X_PATTERN: f64 = 1e-12;

/// Smallest temperature accepted by the Gibbs constructors.
pub const MIN_TEMPERATURE: f64 = 1e-8;

/// Required `|g|` at a certified critical point.
pub const ROOT: f64 = 1e-9;
