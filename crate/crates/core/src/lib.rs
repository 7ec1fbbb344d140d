//! Ground-state and thermal entanglement of the two-qubit Heisenberg XXZ
//! chain in a uniform field `B` and an inhomogeneous field `b`.
//!
//! * [`qmath`]: 4×4 complex linear algebra (Jacobi eigensolver, PSD square
//!   root, singular values).
//! * [`model`]: Hamiltonian, closed-form spectrum, ground-state phases.
//! * [`thermal`]: Gibbs states and concurrence by several routes.
//! * [`sweep`]: parameter grids, critical points and figure presets.
//! * [`verify`]: seeded oracle-equivalence and symmetry suites.

pub mod error;
pub mod model;
pub mod qmath;
pub mod sweep;
pub mod thermal;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
pub use model::{ModelParams, Phase};
pub use thermal::{ConcurrenceMethod, Temperature};
