//! Lattices used throughout the tests, benches and CLI examples.

use crate::lattice::LatticeSpec;

pub const FIGURE1_JSON: &str = include_str!("../../../fixtures/figure1.json");
pub const INIT8_JSON: &str = include_str!("../../../fixtures/init8.json");
pub const BOUNCE_JSON: &str = include_str!("../../../fixtures/bounce.json");

/// `G = ((8,3),(7,1),(6,5),(4,2))`, `B = {2,3,4}`,
/// `Θ = (1/3, 2/7, 5/11, −3/13)`, `q = 7/5`.
pub fn figure1() -> LatticeSpec {
    LatticeSpec::from_json(FIGURE1_JSON).expect("fixture parses")
}

/// The initial pairing for eight end points with the same parameters as
/// [`figure1`].
pub fn init8() -> LatticeSpec {
    LatticeSpec::from_json(INIT8_JSON).expect("fixture parses")
}

/// One reflected line, `θ = 1/3`, `q = 2`.
pub fn bounce() -> LatticeSpec {
    LatticeSpec::from_json(BOUNCE_JSON).expect("fixture parses")
}
