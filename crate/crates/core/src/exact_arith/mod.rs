//! Exact rational scalars, vectors and dense matrices.

mod matrix;
mod rational;

pub use matrix::{ExactMatrix, ExactVector};
pub use rational::{rat, Rational};

use crate::error::Result;

pub fn parse_rational(text: &str) -> Result<Rational> {
    text.parse()
}
