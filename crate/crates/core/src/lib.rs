//! Exact evaluation of partition functions of six-vertex lattices with
//! reflecting ends, by direct contraction, algebraic and coordinate Bethe
//! ansatz.

pub mod aba;
pub mod cba;
pub mod compute;
pub mod contraction;
pub mod error;
pub mod exact_arith;
pub mod fixtures;
pub mod lattice;
pub mod monodromy;
pub mod sampling;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use exact_arith::{rat, ExactMatrix, ExactVector, Rational};
pub use lattice::{validate_spec, BetheRootSet, Chord, ExternalConfig, LatticeSpec, ValidationReport};
pub use monodromy::{AuxOperator, Chain, QuantumOperator, QuantumState};

pub use aba::z_aba;
pub use cba::z_cba;
pub use contraction::z_direct;
