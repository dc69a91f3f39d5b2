//! Chain-space operators built from Lax factors: single-row monodromies, the
//! double-row monodromy `U(z) = S_G M(z) 𝒦(z) M̂(z) S_G⁻¹` with its blocks
//! `A, B, C, D`, the reference state and the vacuum eigenvalues.
//!
//! Basis convention: site 1 is the most significant bit, state `1` is bit 0
//! and state `2` is bit 1. Auxiliary-space operators are stored as 2×2 blocks
//! of quantum-space operators.
//!
//! Two routes exist. [`Chain::apply_factors`] applies Lax factors one site at
//! a time to a pair of quantum states (one per auxiliary basis vector) and is
//! used for all state construction. The dense [`AuxOperator`] route is used
//! for operator identities on short chains.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_arith::{ExactMatrix, ExactVector, Rational};
use crate::lattice::{ice_rule_satisfied, inhomogeneities, ExternalConfig, LatticeSpec};
use crate::weights;

/// Vector in the `2^L`-dimensional chain space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumState {
    chain_length: usize,
    vector: ExactVector,
}

impl QuantumState {
    pub fn new(chain_length: usize, vector: ExactVector) -> Result<Self> {
        if vector.dim() != 1 << chain_length {
            return Err(Error::DimensionMismatch(format!(
                "state of dim {} on a chain of length {chain_length}",
                vector.dim()
            )));
        }
        Ok(QuantumState { chain_length, vector })
    }

    pub fn zeros(chain_length: usize) -> Self {
        QuantumState { chain_length, vector: ExactVector::zeros(1 << chain_length) }
    }

    /// Product basis state with labels `states[i] ∈ {1, 2}` on site `i + 1`.
    pub fn product(states: &[u8]) -> Self {
        let mut s = Self::zeros(states.len());
        s.vector[basis_index(states)] = Rational::one();
        s
    }

    pub fn chain_length(&self) -> usize {
        self.chain_length
    }

    pub fn vector(&self) -> &ExactVector {
        &self.vector
    }

    pub fn into_vector(self) -> ExactVector {
        self.vector
    }

    /// Component at the product state `states` (labels in `{1, 2}`).
    pub fn component(&self, states: &[u8]) -> &Rational {
        &self.vector[basis_index(states)]
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero()
    }

    pub fn scale(&self, s: &Rational) -> QuantumState {
        QuantumState { chain_length: self.chain_length, vector: self.vector.scale(s) }
    }

    pub fn tensor(&self, other: &QuantumState) -> QuantumState {
        QuantumState {
            chain_length: self.chain_length + other.chain_length,
            vector: self.vector.tensor(&other.vector),
        }
    }

    /// Sum of squared components.
    pub fn norm_squared(&self) -> Rational {
        self.vector.dot(&self.vector).expect("same dim")
    }

    /// `Some(c)` when `self = c · other`.
    pub fn proportionality(&self, other: &QuantumState) -> Option<Rational> {
        self.vector.proportionality(&other.vector)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state serializes")
    }
}

/// 0-based index of a product state, site 1 most significant.
pub fn basis_index(states: &[u8]) -> usize {
    states.iter().fold(0, |acc, &s| (acc << 1) | usize::from(s == 2))
}

/// Labels in `{1, 2}` of the product state at `index`.
pub fn basis_labels(index: usize, chain_length: usize) -> Vec<u8> {
    (1..=chain_length).map(|site| 1 + ((index >> (chain_length - site)) & 1) as u8).collect()
}

#[derive(Serialize, Deserialize)]
struct ComponentFile {
    basis: String,
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    #[serde(rename = "L")]
    chain_length: usize,
    components: Vec<ComponentFile>,
}

impl Serialize for QuantumState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let components = self
            .vector
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(idx, x)| ComponentFile {
                basis: basis_labels(idx, self.chain_length).iter().map(|s| char::from(b'0' + s)).collect(),
                value: x.clone(),
            })
            .collect();
        StateFile { chain_length: self.chain_length, components }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuantumState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let file = StateFile::deserialize(deserializer)?;
        if file.chain_length > 24 {
            return Err(D::Error::custom("chain length too large"));
        }
        let mut state = QuantumState::zeros(file.chain_length);
        for c in file.components {
            let labels: Vec<u8> = c.basis.bytes().map(|b| b.wrapping_sub(b'0')).collect();
            if labels.len() != file.chain_length || labels.iter().any(|&s| s != 1 && s != 2) {
                return Err(D::Error::custom(format!("bad basis label {:?}", c.basis)));
            }
            state.vector[basis_index(&labels)] = c.value;
        }
        Ok(state)
    }
}

/// `⟨α,β|Ψ⟩ / ⟨α₀,β₀|Ψ⟩`, zero when the ice rule fails.
pub fn config_ratio(spec: &LatticeSpec, state: &QuantumState, config: &ExternalConfig) -> Result<Rational> {
    if !ice_rule_satisfied(spec, config)? {
        return Ok(Rational::zero());
    }
    let reference = reference_component(spec, state)?;
    let value = &state.vector[spec.config_index(config)?];
    Ok(value / &reference)
}

/// `⟨α₀,β₀|Ψ⟩`, an error when it vanishes.
pub fn reference_component(spec: &LatticeSpec, state: &QuantumState) -> Result<Rational> {
    if state.chain_length != spec.chain_length() {
        return Err(Error::DimensionMismatch(format!(
            "state on {} sites for a lattice with {} end points",
            state.chain_length,
            spec.chain_length()
        )));
    }
    let reference = state.vector[spec.config_index(&ExternalConfig::reference(spec.n_lines()))?].clone();
    if reference.is_zero() {
        return Err(Error::Degenerate("reference component vanishes".into()));
    }
    Ok(reference)
}

/// Square operator on the chain space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumOperator {
    chain_length: usize,
    matrix: ExactMatrix,
}

impl QuantumOperator {
    pub fn new(chain_length: usize, matrix: ExactMatrix) -> Result<Self> {
        let dim = 1 << chain_length;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} operator on a chain of length {chain_length}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(QuantumOperator { chain_length, matrix })
    }

    pub fn zeros(chain_length: usize) -> Self {
        let dim = 1 << chain_length;
        QuantumOperator { chain_length, matrix: ExactMatrix::zeros(dim, dim) }
    }

    pub fn identity(chain_length: usize) -> Self {
        QuantumOperator { chain_length, matrix: ExactMatrix::identity(1 << chain_length) }
    }

    /// `e_{row,col}` (states in `{1,2}`) acting on `site`.
    pub fn site_unit(chain_length: usize, site: usize, row: u8, col: u8) -> Self {
        let mut unit = ExactMatrix::zeros(2, 2);
        unit[(usize::from(row - 1), usize::from(col - 1))] = Rational::one();
        QuantumOperator { chain_length, matrix: weights::embed_single(&unit, site - 1, chain_length) }
    }

    /// A 2×2 matrix acting on `site`.
    pub fn on_site(chain_length: usize, site: usize, op: &ExactMatrix) -> Self {
        QuantumOperator { chain_length, matrix: weights::embed_single(op, site - 1, chain_length) }
    }

    pub fn chain_length(&self) -> usize {
        self.chain_length
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn mul(&self, other: &QuantumOperator) -> QuantumOperator {
        QuantumOperator { chain_length: self.chain_length, matrix: self.matrix.mul(&other.matrix).expect("same chain") }
    }

    pub fn add(&self, other: &QuantumOperator) -> QuantumOperator {
        QuantumOperator { chain_length: self.chain_length, matrix: self.matrix.add(&other.matrix).expect("same chain") }
    }

    pub fn sub(&self, other: &QuantumOperator) -> QuantumOperator {
        QuantumOperator { chain_length: self.chain_length, matrix: self.matrix.sub(&other.matrix).expect("same chain") }
    }

    pub fn scale(&self, s: &Rational) -> QuantumOperator {
        QuantumOperator { chain_length: self.chain_length, matrix: self.matrix.scale(s) }
    }

    pub fn apply(&self, state: &QuantumState) -> QuantumState {
        QuantumState { chain_length: self.chain_length, vector: self.matrix.apply(&state.vector).expect("same chain") }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    A,
    B,
    C,
    D,
}

impl Block {
    fn position(self) -> (usize, usize) {
        match self {
            Block::A => (0, 0),
            Block::B => (0, 1),
            Block::C => (1, 0),
            Block::D => (1, 1),
        }
    }
}

/// 2×2 auxiliary-space matrix of quantum operators `[[A, B], [C, D]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxOperator {
    chain_length: usize,
    blocks: [[QuantumOperator; 2]; 2],
}

impl AuxOperator {
    pub fn new(blocks: [[QuantumOperator; 2]; 2]) -> Result<Self> {
        let l = blocks[0][0].chain_length;
        if blocks.iter().flatten().any(|b| b.chain_length != l) {
            return Err(Error::DimensionMismatch("blocks on different chains".into()));
        }
        Ok(AuxOperator { chain_length: l, blocks })
    }

    /// `diag(d0, d1) ⊗ I`.
    pub fn diagonal(chain_length: usize, d0: &Rational, d1: &Rational) -> Self {
        let id = QuantumOperator::identity(chain_length);
        let zero = QuantumOperator::zeros(chain_length);
        AuxOperator { chain_length, blocks: [[id.scale(d0), zero.clone()], [zero, id.scale(d1)]] }
    }

    pub fn chain_length(&self) -> usize {
        self.chain_length
    }

    pub fn block(&self, which: Block) -> &QuantumOperator {
        let (r, c) = which.position();
        &self.blocks[r][c]
    }

    pub fn blocks(&self) -> &[[QuantumOperator; 2]; 2] {
        &self.blocks
    }

    /// Product in the auxiliary space.
    pub fn mul(&self, other: &AuxOperator) -> AuxOperator {
        let entry = |r: usize, c: usize| self.blocks[r][0].mul(&other.blocks[0][c]).add(&self.blocks[r][1].mul(&other.blocks[1][c]));
        AuxOperator { chain_length: self.chain_length, blocks: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]] }
    }

    pub fn scale(&self, s: &Rational) -> AuxOperator {
        AuxOperator { chain_length: self.chain_length, blocks: self.blocks.clone().map(|row| row.map(|b| b.scale(s))) }
    }

    /// Transpose in the auxiliary space only.
    pub fn aux_transpose(&self) -> AuxOperator {
        let [[a, b], [c, d]] = self.blocks.clone();
        AuxOperator { chain_length: self.chain_length, blocks: [[a, c], [b, d]] }
    }

    /// `S X S⁻¹` with `S` in the auxiliary space.
    pub fn conjugate_by_s(&self) -> AuxOperator {
        let [[a, b], [c, d]] = self.blocks.clone();
        let neg = -Rational::one();
        AuxOperator { chain_length: self.chain_length, blocks: [[d, c.scale(&neg)], [b.scale(&neg), a]] }
    }

    /// Full `(2·2^L)`-dimensional matrix, auxiliary index most significant.
    pub fn to_matrix(&self) -> ExactMatrix {
        let dim = 1 << self.chain_length;
        let mut out = ExactMatrix::zeros(2 * dim, 2 * dim);
        for r in 0..2 {
            for c in 0..2 {
                let m = self.blocks[r][c].matrix();
                for i in 0..dim {
                    for j in 0..dim {
                        if !m[(i, j)].is_zero() {
                            out[(r * dim + i, c * dim + j)] = m[(i, j)].clone();
                        }
                    }
                }
            }
        }
        out
    }

    /// Apply to `e_aux ⊗ ψ` pairs: `(X (w0, w1))_r = Σ_c X_rc w_c`.
    pub fn apply(&self, pair: &AuxVector) -> AuxVector {
        let row = |r: usize| {
            let mut out = self.blocks[r][0].matrix().apply(&pair[0]).expect("dim");
            out.axpy(&Rational::one(), &self.blocks[r][1].matrix().apply(&pair[1]).expect("dim")).expect("dim");
            out
        };
        [row(0), row(1)]
    }
}

/// A chain-space vector for each auxiliary basis state.
pub type AuxVector = [ExactVector; 2];

/// One Lax factor `L_site(arg)` or `L̄_site(arg)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxFactor {
    pub site: usize,
    pub arg: Rational,
    pub conjugate: bool,
}

/// The spin chain behind a lattice: inhomogeneities, which sites carry the
/// conjugate representation, and the boundary parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    v: Vec<Rational>,
    conjugate: Vec<bool>,
    q: Rational,
}

impl Chain {
    pub fn new(v: Vec<Rational>, conjugate: Vec<bool>, q: Rational) -> Result<Self> {
        if v.len() != conjugate.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} inhomogeneities but {} representation flags",
                v.len(),
                conjugate.len()
            )));
        }
        if v.len() > 24 {
            return Err(Error::DimensionMismatch(format!("chain length {} too large", v.len())));
        }
        Ok(Chain { v, conjugate, q })
    }

    /// Sites `j_k` carry the conjugate representation (the effect of `S_G`).
    pub fn from_spec(spec: &LatticeSpec) -> Result<Self> {
        let v = inhomogeneities(spec)?;
        let mut conjugate = vec![false; spec.chain_length()];
        for c in spec.chords() {
            conjugate[c.end - 1] = true;
        }
        Chain::new(v.values().to_vec(), conjugate, spec.boundary_q().clone())
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn dim(&self) -> usize {
        1 << self.v.len()
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn inhomogeneities(&self) -> &[Rational] {
        &self.v
    }

    /// `v_site`, 1-based.
    pub fn inhomogeneity(&self, site: usize) -> &Rational {
        &self.v[site - 1]
    }

    pub fn is_conjugate(&self, site: usize) -> bool {
        self.conjugate[site - 1]
    }

    pub fn conjugate_flags(&self) -> &[bool] {
        &self.conjugate
    }

    /// Sites `1..=n` as a shorter chain.
    pub fn truncate(&self, n: usize) -> Chain {
        Chain { v: self.v[..n].to_vec(), conjugate: self.conjugate[..n].to_vec(), q: self.q.clone() }
    }

    /// Factors of `M(z) = L_1(z−v_1)⋯L_L(z−v_L)` (or of
    /// `M̂(z) = L_L(z+v_L)⋯L_1(z+v_1)`), left to right.
    pub fn single_row_factors(&self, z: &Rational, hat: bool) -> Vec<LaxFactor> {
        let factor = |site: usize| {
            let v = &self.v[site - 1];
            LaxFactor { site, arg: if hat { z + v } else { z - v }, conjugate: self.conjugate[site - 1] }
        };
        if hat {
            (1..=self.len()).rev().map(factor).collect()
        } else {
            (1..=self.len()).map(factor).collect()
        }
    }

    /// Apply an auxiliary-space product of Lax factors (listed left to right).
    pub fn apply_factors(&self, factors: &[LaxFactor], pair: AuxVector) -> AuxVector {
        factors.iter().rev().fold(pair, |acc, f| apply_lax(f, self.len(), &acc))
    }

    pub fn apply_single_row(&self, z: &Rational, hat: bool, pair: AuxVector) -> AuxVector {
        self.apply_factors(&self.single_row_factors(z, hat), pair)
    }

    /// `U(z)` applied to an auxiliary pair.
    pub fn apply_double_row(&self, z: &Rational, pair: AuxVector) -> AuxVector {
        let [w0, w1] = self.apply_single_row(z, true, pair);
        let dressed = [w0.scale(&(&self.q + z)), w1.scale(&(&self.q - z))];
        self.apply_single_row(z, false, dressed)
    }

    /// `(Aψ, Bψ, Cψ, Dψ)` for `U(z)`.
    pub fn blocks_on(&self, z: &Rational, state: &QuantumState) -> BlockAction {
        let zero = ExactVector::zeros(self.dim());
        let [a, c] = self.apply_double_row(z, [state.vector.clone(), zero.clone()]);
        let [b, d] = self.apply_double_row(z, [zero, state.vector.clone()]);
        let wrap = |vector| QuantumState { chain_length: self.len(), vector };
        BlockAction { a: wrap(a), b: wrap(b), c: wrap(c), d: wrap(d) }
    }

    /// `B(z) ψ`.
    pub fn b_on(&self, z: &Rational, state: &QuantumState) -> QuantumState {
        let [b, _] = self.apply_double_row(z, [ExactVector::zeros(self.dim()), state.vector.clone()]);
        QuantumState { chain_length: self.len(), vector: b }
    }

    /// Block of the closed-chain monodromy `S_G M(z) S_G⁻¹` applied to `ψ`.
    pub fn closed_block_on(&self, z: &Rational, which: Block, state: &QuantumState) -> QuantumState {
        let (r, c) = which.position();
        let mut pair = [ExactVector::zeros(self.dim()), ExactVector::zeros(self.dim())];
        pair[c] = state.vector.clone();
        let out = self.apply_single_row(z, false, pair);
        QuantumState { chain_length: self.len(), vector: out[r].clone() }
    }

    /// `Ω = S_G |1…1⟩`: state 2 with a factor −1 at every conjugate site.
    pub fn reference_state(&self) -> QuantumState {
        let labels: Vec<u8> = self.conjugate.iter().map(|&c| if c { 2 } else { 1 }).collect();
        let flips = self.conjugate.iter().filter(|&&c| c).count();
        QuantumState::product(&labels).scale(&Rational::sign_power(flips))
    }

    /// `B(z_1)⋯B(z_m) Ω`.
    pub fn bethe_state(&self, roots: &[Rational]) -> QuantumState {
        roots.iter().rev().fold(self.reference_state(), |psi, z| self.b_on(z, &psi))
    }

    /// Dense operator from its action on auxiliary pairs.
    pub fn dense_from_action(&self, action: impl Fn(AuxVector) -> AuxVector) -> AuxOperator {
        let dim = self.dim();
        let l = self.len();
        let mut blocks: [[ExactMatrix; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| ExactMatrix::zeros(dim, dim)));
        for c in 0..2 {
            for j in 0..dim {
                let mut pair = [ExactVector::zeros(dim), ExactVector::zeros(dim)];
                pair[c][j] = Rational::one();
                let out = action(pair);
                for r in 0..2 {
                    for (i, x) in out[r].entries().iter().enumerate() {
                        if !x.is_zero() {
                            blocks[r][c][(i, j)] = x.clone();
                        }
                    }
                }
            }
        }
        AuxOperator { chain_length: l, blocks: blocks.map(|row| row.map(|matrix| QuantumOperator { chain_length: l, matrix })) }
    }

    pub fn single_row_dense(&self, z: &Rational, hat: bool) -> AuxOperator {
        self.dense_from_action(|pair| self.apply_single_row(z, hat, pair))
    }

    pub fn double_row_dense(&self, z: &Rational) -> AuxOperator {
        self.dense_from_action(|pair| self.apply_double_row(z, pair))
    }
}

/// The four blocks of `U(z)` applied to one state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockAction {
    pub a: QuantumState,
    pub b: QuantumState,
    pub c: QuantumState,
    pub d: QuantumState,
}

fn apply_lax(f: &LaxFactor, chain_length: usize, pair: &AuxVector) -> AuxVector {
    let mask = 1usize << (chain_length - f.site);
    let dim = pair[0].dim();
    let diag = if f.conjugate { &f.arg + 1 } else { f.arg.clone() };
    let diag_zero = diag.is_zero();
    let mut out = [ExactVector::zeros(dim), ExactVector::zeros(dim)];
    for (r, out_r) in out.iter_mut().enumerate() {
        let w_r = &pair[r];
        for idx in 0..dim {
            let bit = usize::from(idx & mask != 0);
            let mut acc = if diag_zero || w_r[idx].is_zero() { Rational::zero() } else { &diag * &w_r[idx] };
            if f.conjugate {
                // − e_{rc}: only rows whose site state equals r receive Σ_c w_c.
                if bit == r {
                    let low = &pair[0][idx & !mask];
                    let high = &pair[1][idx | mask];
                    if !low.is_zero() {
                        acc -= low;
                    }
                    if !high.is_zero() {
                        acc -= high;
                    }
                }
            } else {
                // + e_{cr}: w_{bit}[idx with site state r].
                let src = if r == 1 { idx | mask } else { idx & !mask };
                let x = &pair[bit][src];
                if !x.is_zero() {
                    acc += x;
                }
            }
            out_r[idx] = acc;
        }
    }
    out
}

/// Dense Lax operator on `site` of a chain of length `chain_length`, as an
/// auxiliary-space block matrix. Plain: `block(r,c) = z δ_rc + e_cr`;
/// conjugate: `block(r,c) = (z+1) δ_rc − e_rc`.
pub fn lax_embed(z: &Rational, site: usize, chain_length: usize, conjugate: bool) -> Result<AuxOperator> {
    if site == 0 || site > chain_length {
        return Err(Error::SiteOutOfRange { site, len: chain_length });
    }
    let id = QuantumOperator::identity(chain_length);
    let block = |r: u8, c: u8| {
        let delta = if r == c { Rational::one() } else { Rational::zero() };
        if conjugate {
            id.scale(&(&delta * (z + 1))).sub(&QuantumOperator::site_unit(chain_length, site, r, c))
        } else {
            id.scale(&(&delta * z)).add(&QuantumOperator::site_unit(chain_length, site, c, r))
        }
    };
    AuxOperator::new([[block(1, 1), block(1, 2)], [block(2, 1), block(2, 2)]])
}

/// `S_G M(z) S_G⁻¹` (`hat = false`) or `S_G M̂(z) S_G⁻¹` (`hat = true`).
pub fn single_row(spec: &LatticeSpec, z: &Rational, hat: bool) -> Result<AuxOperator> {
    Ok(Chain::from_spec(spec)?.single_row_dense(z, hat))
}

/// Crossing relation `M̂^{t_a}(z) = (−1)^L S M(−z−1) S⁻¹`.
pub fn check_crossing(spec: &LatticeSpec, z: &Rational) -> Result<bool> {
    let chain = Chain::from_spec(spec)?;
    Ok(crossing_holds(&chain, z, &Rational::sign_power(chain.len())))
}

pub(crate) fn crossing_holds(chain: &Chain, z: &Rational, sign: &Rational) -> bool {
    let lhs = chain.single_row_dense(z, true).aux_transpose();
    let rhs = chain.single_row_dense(&(-z - 1), false).conjugate_by_s().scale(sign);
    lhs == rhs
}

/// `U(z, G, B, Θ)` as dense blocks.
pub fn double_row(spec: &LatticeSpec, z: &Rational) -> Result<AuxOperator> {
    Ok(Chain::from_spec(spec)?.double_row_dense(z))
}

/// `D̃(z) = D(z) − A(z)/(2z+1)`.
pub fn d_tilde(spec: &LatticeSpec, z: &Rational) -> Result<QuantumOperator> {
    let u = double_row(spec, z)?;
    d_tilde_from(&u, z)
}

pub(crate) fn d_tilde_from(u: &AuxOperator, z: &Rational) -> Result<QuantumOperator> {
    let shift = two_z_plus_one_inverse(z)?;
    Ok(u.block(Block::D).sub(&u.block(Block::A).scale(&shift)))
}

pub(crate) fn two_z_plus_one_inverse(z: &Rational) -> Result<Rational> {
    let den = z * 2 + 1;
    if den.is_zero() {
        return Err(Error::Pole("2z + 1 = 0".into()));
    }
    den.recip()
}

pub fn reference_state(spec: &LatticeSpec) -> Result<QuantumState> {
    Ok(Chain::from_spec(spec)?.reference_state())
}

/// `f(z,θ) = (z−θ−1)(z−θ+1)(z+θ)(z+θ+2)`.
pub fn f_factor(z: &Rational, theta: &Rational) -> Rational {
    (z - theta - 1) * (z - theta + 1) * (z + theta) * (z + theta + 2)
}

/// `g(z,θ) = (z−θ)(z−θ+1)(z+θ+1)(z+θ+2)`.
pub fn g_factor(z: &Rational, theta: &Rational) -> Rational {
    (z - theta) * (z - theta + 1) * (z + theta + 1) * (z + theta + 2)
}

/// `Λ(z) = ∏_{k∈B} f(z,θ_k) ∏_{k∉B} f(z,−θ_k)`.
pub fn lambda(spec: &LatticeSpec, z: &Rational) -> Rational {
    (1..=spec.n_lines()).map(|k| f_factor(z, &spec.signed_rapidity(k))).product()
}

/// `Ξ(z) = ∏_{k∈B} g(z,θ_k) ∏_{k∉B} g(z,−θ_k)`.
pub fn xi(spec: &LatticeSpec, z: &Rational) -> Rational {
    (1..=spec.n_lines()).map(|k| g_factor(z, &spec.signed_rapidity(k))).product()
}

/// `α(z) = (q+z) Ξ(z)`.
pub fn vacuum_alpha(spec: &LatticeSpec, z: &Rational) -> Rational {
    (spec.boundary_q() + z) * xi(spec, z)
}

/// `δ̃(z) = 2z/(2z+1) (q−z−1) Ξ(z−1)`.
pub fn vacuum_delta_tilde(spec: &LatticeSpec, z: &Rational) -> Result<Rational> {
    Ok(z * 2 * two_z_plus_one_inverse(z)? * (spec.boundary_q() - z - 1) * xi(spec, &(z - 1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VacuumEigenvalues {
    pub alpha_val: Rational,
    pub delta_tilde_val: Rational,
    pub xi_val: Rational,
    pub lambda_val: Rational,
}

pub fn vacuum_eigenvalues(spec: &LatticeSpec, z: &Rational) -> Result<VacuumEigenvalues> {
    Ok(VacuumEigenvalues {
        alpha_val: vacuum_alpha(spec, z),
        delta_tilde_val: vacuum_delta_tilde(spec, z)?,
        xi_val: xi(spec, z),
        lambda_val: lambda(spec, z),
    })
}

/// Boundary Yang–Baxter equation for `U` on `aux ⊗ aux ⊗ quantum`:
/// `R(x−y) U₁(x) R(x+y) U₂(y) = U₂(y) R(x+y) U₁(x) R(x−y)`.
pub fn check_ubybe(spec: &LatticeSpec, x: &Rational, y: &Rational) -> Result<bool> {
    let chain = Chain::from_spec(spec)?;
    let ux = chain.double_row_dense(x);
    let uy = chain.double_row_dense(y);
    let r_minus = weights::r_matrix(&(x - y))?.matrix;
    let r_plus = weights::r_matrix(&(x + y))?.matrix;
    let dim = chain.dim();
    let r_embed = |r: &ExactMatrix| r.tensor(&ExactMatrix::identity(dim));
    let u_first = two_aux_embed(&ux, true);
    let u_second = two_aux_embed(&uy, false);
    let lhs = [r_embed(&r_minus), u_first.clone(), r_embed(&r_plus), u_second.clone()];
    let rhs = [u_second, r_embed(&r_plus), u_first, r_embed(&r_minus)];
    let prod = |ms: &[ExactMatrix]| ms[1..].iter().fold(ms[0].clone(), |acc, m| acc.mul(m).expect("dim"));
    Ok(prod(&lhs) == prod(&rhs))
}

/// `U ⊗ I` (`first = true`) or `I ⊗ U` on `aux₁ ⊗ aux₂ ⊗ quantum`.
fn two_aux_embed(u: &AuxOperator, first: bool) -> ExactMatrix {
    let dim = 1 << u.chain_length;
    let mut out = ExactMatrix::zeros(4 * dim, 4 * dim);
    for a in 0..2 {
        for b in 0..2 {
            let m = u.blocks[a][b].matrix();
            for spectator in 0..2 {
                let (row_aux, col_aux) =
                    if first { (2 * a + spectator, 2 * b + spectator) } else { (2 * spectator + a, 2 * spectator + b) };
                for i in 0..dim {
                    for j in 0..dim {
                        if !m[(i, j)].is_zero() {
                            out[(row_aux * dim + i, col_aux * dim + j)] = m[(i, j)].clone();
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use crate::lattice::Chord;

    fn line(reflected: bool) -> LatticeSpec {
        let b: Vec<usize> = if reflected { vec![1] } else { vec![] };
        LatticeSpec::new(vec![Chord::new(2, 1)], b, vec![rat(1, 3)], rat(7, 5)).unwrap()
    }

    fn crossed() -> LatticeSpec {
        LatticeSpec::new(vec![Chord::new(4, 2), Chord::new(3, 1)], [2], vec![rat(1, 3), rat(2, 7)], rat(7, 5)).unwrap()
    }

    fn aux_product(ops: &[AuxOperator]) -> AuxOperator {
        ops[1..].iter().fold(ops[0].clone(), |acc, m| acc.mul(m))
    }

    #[test]
    fn lax_at_zero_is_permutation() {
        let l = lax_embed(&Rational::zero(), 1, 1, false).unwrap();
        assert_eq!(l.to_matrix(), weights::permutation());
        let l = lax_embed(&rat(2, 5), 1, 1, false).unwrap();
        assert_eq!(l.to_matrix(), weights::lax(&rat(2, 5)));
        let lbar = lax_embed(&rat(2, 5), 1, 1, true).unwrap();
        assert_eq!(lbar.to_matrix(), weights::lax_conjugate(&rat(2, 5)));
    }

    #[test]
    fn lax_trace() {
        let z = rat(3, 11);
        let l = lax_embed(&z, 1, 1, false).unwrap();
        let trace = l.block(Block::A).add(l.block(Block::D));
        let m = trace.matrix();
        // block trace is (2z+1)·I on the site
        assert_eq!(&m[(0, 0)] + &m[(1, 1)], (&z * 2 + 1) * 2);
        assert_eq!(m[(0, 0)], &z * 2 + 1);
    }

    #[test]
    fn conjugate_is_similarity_at_site() {
        let z = rat(-4, 9);
        let s = weights::SMatrix::new();
        let l = lax_embed(&z, 2, 3, false).unwrap();
        let s_site = QuantumOperator::on_site(3, 2, &s.matrix);
        let s_inv = QuantumOperator::on_site(3, 2, &s.inverse());
        let conj = AuxOperator::new(l.blocks().clone().map(|row| row.map(|b| s_site.mul(&b).mul(&s_inv)))).unwrap();
        assert_eq!(conj, lax_embed(&z, 2, 3, true).unwrap());
    }

    #[test]
    fn lax_embed_site_range() {
        assert!(matches!(lax_embed(&Rational::zero(), 3, 2, false), Err(Error::SiteOutOfRange { .. })));
        assert!(matches!(lax_embed(&Rational::zero(), 0, 2, false), Err(Error::SiteOutOfRange { .. })));
    }

    #[test]
    fn sparse_route_matches_dense_lax_products() {
        let spec = crossed();
        let chain = Chain::from_spec(&spec).unwrap();
        let z = rat(2, 9);
        for hat in [false, true] {
            let dense: Vec<AuxOperator> = chain
                .single_row_factors(&z, hat)
                .iter()
                .map(|f| lax_embed(&f.arg, f.site, chain.len(), f.conjugate).unwrap())
                .collect();
            assert_eq!(aux_product(&dense), single_row(&spec, &z, hat).unwrap());
        }
    }

    #[test]
    fn single_row_at_special_points_is_permutation_product() {
        // L=2, B=∅, v = (θ-1, θ): choosing z = v_2 puts the site-2 factor at 0.
        let spec = line(false);
        let chain = Chain::from_spec(&spec).unwrap();
        let z = chain.inhomogeneity(2).clone();
        let m = single_row(&spec, &z, false).unwrap();
        let l1 = lax_embed(&(&z - chain.inhomogeneity(1)), 1, 2, true).unwrap();
        let p2 = lax_embed(&Rational::zero(), 2, 2, false).unwrap();
        assert_eq!(m, l1.mul(&p2));
    }

    #[test]
    fn lower_left_block_annihilates_vacuum() {
        let spec = crossed();
        let chain = Chain::from_spec(&spec).unwrap();
        for z in [rat(1, 5), rat(-7, 3)] {
            let c = single_row(&spec, &z, false).unwrap();
            assert!(c.block(Block::C).apply(&chain.reference_state()).is_zero());
            let c = single_row(&spec, &z, true).unwrap();
            assert!(c.block(Block::C).apply(&chain.reference_state()).is_zero());
        }
    }

    #[test]
    fn crossing_relation() {
        assert!(check_crossing(&line(false), &rat(2, 7)).unwrap());
        assert!(check_crossing(&line(true), &rat(2, 7)).unwrap());
        assert!(check_crossing(&crossed(), &Rational::zero()).unwrap());
        let chain = Chain::from_spec(&crossed()).unwrap();
        assert!(!crossing_holds(&chain, &rat(2, 7), &-Rational::one()));
    }

    #[test]
    fn double_row_of_single_line_matches_explicit_product() {
        let spec = line(false);
        let th = spec.rapidity(1).clone();
        let z = rat(3, 10);
        let u = double_row(&spec, &z).unwrap();
        let q = spec.boundary_q();
        let explicit = aux_product(&[
            lax_embed(&(&z - &th + 1), 1, 2, true).unwrap(),
            lax_embed(&(&z - &th), 2, 2, false).unwrap(),
            AuxOperator::diagonal(2, &(q + &z), &(q - &z)),
            lax_embed(&(&z + &th), 2, 2, false).unwrap(),
            lax_embed(&(&z + &th - 1), 1, 2, true).unwrap(),
        ]);
        assert_eq!(u, explicit);
    }

    #[test]
    fn reference_state_action() {
        for spec in [line(false), line(true), crossed()] {
            let chain = Chain::from_spec(&spec).unwrap();
            let omega = chain.reference_state();
            for z in [rat(1, 4), rat(-5, 3)] {
                let act = chain.blocks_on(&z, &omega);
                let vac = vacuum_eigenvalues(&spec, &z).unwrap();
                assert_eq!(act.a, omega.scale(&vac.alpha_val));
                assert!(act.c.is_zero());
                let d_tilde = d_tilde(&spec, &z).unwrap();
                assert_eq!(d_tilde.apply(&omega), omega.scale(&vac.delta_tilde_val));
            }
        }
    }

    #[test]
    fn d_tilde_pole() {
        assert!(matches!(d_tilde(&line(true), &rat(-1, 2)), Err(Error::Pole(_))));
    }

    #[test]
    fn reference_state_sign() {
        let omega = reference_state(&line(false)).unwrap();
        assert_eq!(omega.component(&[2, 1]), &rat(-1, 1));
        assert_eq!(omega.norm_squared(), Rational::one());
        let init = LatticeSpec::initial([], vec![rat(1, 3), rat(2, 7)], rat(7, 5)).unwrap();
        let omega = reference_state(&init).unwrap();
        assert_eq!(omega.component(&[2, 1, 2, 1]), &Rational::one());
        assert_eq!(omega.norm_squared(), Rational::one());
    }

    #[test]
    fn lambda_of_single_lines() {
        let z = rat(5, 12);
        assert_eq!(lambda(&line(true), &z), f_factor(&z, &rat(1, 3)));
        assert_eq!(lambda(&line(false), &z), f_factor(&z, &rat(-1, 3)));
    }

    #[test]
    fn lambda_xi_shift_identity() {
        let z = rat(3, 7);
        for spec in [line(false), line(true), crossed()] {
            let lhs = lambda(&spec, &(&z + 1)) / xi(&spec, &(&z + 1));
            let rhs = xi(&spec, &(&z - 1)) / lambda(&spec, &z);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ubybe_for_double_row() {
        assert!(check_ubybe(&line(false), &rat(1, 3), &rat(2, 9)).unwrap());
        assert!(check_ubybe(&line(true), &rat(-3, 8), &rat(5, 7)).unwrap());
    }

    #[test]
    fn state_json_round_trip() {
        let chain = Chain::from_spec(&crossed()).unwrap();
        let psi = chain.bethe_state(&[rat(1, 3)]);
        let text = psi.to_json();
        assert!(text.contains("\"L\":4"));
        let back: QuantumState = serde_json::from_str(&text).unwrap();
        assert_eq!(back, psi);
        let omega = chain.reference_state();
        assert_eq!(omega.to_json(), r#"{"L":4,"components":[{"basis":"2211","value":"1"}]}"#);
    }
}
