//! Matchgate circuits and linear threshold gates.
//!
//! Two-qubit matchgates on nearest-neighbour lines act on the Jordan-Wigner
//! operators by an `SO(2m)` rotation. Measuring the first qubit of such a
//! circuit on a basis input only ever sees an affine function `aᵀx̂` of the
//! ±1-encoded input, which ties matchgate computation to linear threshold
//! gates: a boolean function is computable with success probability `p`
//! exactly when it is a threshold gate with margin `ε ≥ 2p − 1`.
//!
//! - [`matchgate`] holds gates, circuits and their compilation to rotations.
//! - [`dense`] is a brute-force state-vector simulator used as ground truth.
//! - [`lp`] is an exact rational simplex solver.
//! - [`ltg`] decides threshold-gate membership, margins and integer weights.
//! - [`synthesis`] builds an optimal circuit for a threshold gate.
//! - [`wms`] is the equivalent classical weighted-majority sampler.
//! - [`verify`] bundles the cross-checks run by `mgltg verify`.
//!
//! Conventions used everywhere: bit strings are indexed `x₁ … xₙ`, the
//! ±1 encoding maps `0 ↦ +1` and `1 ↦ −1`, and truth tables and state
//! vectors put `x₁` (qubit 1) in the most significant bit of the row index.

pub mod bits;
pub mod dense;
mod error;
pub mod lp;
pub mod ltg;
pub mod matchgate;
pub mod random;
pub mod synthesis;
pub mod verify;
pub mod wms;

pub use bits::{BitString, BooleanFunction};
pub use error::{Error, ErrorKind, Result};
pub use matchgate::{Circuit, Gate, Matchgate, Rotation};

/// Tolerance used for unitarity, orthogonality and numeric identity checks.
pub const TOLERANCE: f64 = 1e-9;
