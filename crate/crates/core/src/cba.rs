//! Coordinate Bethe ansatz: the wave function `Υ` as a sum over root
//! reflections and permutations, the closed-chain wave function `Φ`, the
//! expansion of the open-chain creation operator in closed-chain blocks, and
//! the partition function from `Υ`.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exact_arith::{ExactVector, Rational};
use crate::lattice::{canonical_bethe_roots, ice_rule_satisfied, inhomogeneities, magnon_positions, ExternalConfig, LatticeSpec};
use crate::monodromy::{basis_index, Block, Chain, QuantumOperator, QuantumState};

fn pole(what: String) -> Error {
    Error::Pole(what)
}

/// `(a−b+1)(a+b+2) / ((a−b)(a+b+1))`, `None` at a pole.
fn pair_factor(a: &Rational, b: &Rational) -> Option<Rational> {
    let den = (a - b) * (a + b + 1);
    if den.is_zero() {
        return None;
    }
    Some((a - b + 1) * (a + b + 2) / den)
}

/// `∏_{k<l} (z_k−z_l+1)(z_k+z_l+2) / ((z_k−z_l)(z_k+z_l+1))`.
pub fn amplitude(ordered_roots: &[Rational]) -> Result<Rational> {
    let mut out = Rational::one();
    for (k, a) in ordered_roots.iter().enumerate() {
        for b in &ordered_roots[k + 1..] {
            out *= pair_factor(a, b).ok_or_else(|| pole(format!("amplitude pole at roots {a}, {b}")))?;
        }
    }
    Ok(out)
}

/// Inputs of the coordinate wave function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveInput {
    v: Vec<Rational>,
    roots: Vec<Rational>,
    x: Vec<usize>,
    q: Rational,
}

impl WaveInput {
    pub fn new(v: Vec<Rational>, roots: Vec<Rational>, x: Vec<usize>, q: Rational) -> Result<Self> {
        let l = v.len();
        if x.len() != roots.len() {
            return Err(Error::InvalidConfig(format!("{} magnons for {} roots", x.len(), roots.len())));
        }
        if x.windows(2).any(|w| w[0] >= w[1]) || x.iter().any(|&s| s == 0 || s > l) {
            return Err(Error::InvalidConfig(format!("magnon sites {x:?} not increasing within 1..={l}")));
        }
        Ok(WaveInput { v, roots, x, q })
    }

    pub fn from_spec(spec: &LatticeSpec, roots: &[Rational], x: Vec<usize>) -> Result<Self> {
        Self::new(inhomogeneities(spec)?.values().to_vec(), roots.to_vec(), x, spec.boundary_q().clone())
    }

    pub fn chain_length(&self) -> usize {
        self.v.len()
    }

    pub fn magnons(&self) -> &[usize] {
        &self.x
    }

    pub fn evaluate(&self) -> Result<Rational> {
        WaveTables::new(&self.v, &self.roots, &self.q).upsilon(&self.x)
    }
}

/// `φ_x(z) = (−1)^L (q−z−1) ∏_j (z+v_j) ∏_{j<x} (z−v_j+1) ∏_{j>x} (z−v_j)`.
pub fn wave_part(x: usize, z: &Rational, w: &WaveInput) -> Rational {
    phi(&w.v, &w.q, x, z)
}

fn phi(v: &[Rational], q: &Rational, x: usize, z: &Rational) -> Rational {
    let mut out = Rational::sign_power(v.len()) * (q - z - 1);
    for (idx, vj) in v.iter().enumerate() {
        let j = idx + 1;
        out *= z + vj;
        if j < x {
            out *= z - vj + 1;
        } else if j > x {
            out *= z - vj;
        }
    }
    out
}

/// `φ` values for every root image and site, plus amplitude factors for
/// every pair of images. Root `i` has images `2i` (itself) and `2i+1`
/// (`−z_i−1`).
struct WaveTables {
    phi: Vec<Vec<Rational>>,
    pairs: Vec<Vec<Option<Rational>>>,
    images: Vec<Rational>,
    m: usize,
}

impl WaveTables {
    fn new(v: &[Rational], roots: &[Rational], q: &Rational) -> Self {
        let images: Vec<Rational> = roots.iter().flat_map(|z| [z.clone(), -z - 1]).collect();
        let phi = images.iter().map(|z| (1..=v.len()).map(|x| phi(v, q, x, z)).collect()).collect();
        let pairs = images.iter().map(|a| images.iter().map(|b| pair_factor(a, b)).collect()).collect();
        WaveTables { phi, pairs, images, m: roots.len() }
    }

    fn upsilon(&self, x: &[usize]) -> Result<Rational> {
        let m = self.m;
        if x.len() != m {
            return Err(Error::InvalidConfig(format!("{} magnons for {m} roots", x.len())));
        }
        let mut total = Rational::zero();
        for tau in 0..(1usize << m) {
            let reflected = |i: usize| (tau >> i) & 1;
            let image = |i: usize| 2 * i + reflected(i);
            let sign = Rational::sign_power(tau.count_ones() as usize);
            let mut sum = Rational::zero();
            for sigma in (0..m).permutations(m) {
                let mut term = Rational::one();
                for (pos, &i) in sigma.iter().enumerate() {
                    term *= &self.phi[image(i)][x[pos] - 1];
                }
                if term.is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in k + 1..m {
                        let (a, b) = (image(sigma[k]), image(sigma[l]));
                        let f = self.pairs[a][b].as_ref().ok_or_else(|| {
                            let tau_bits: Vec<usize> = (0..m).map(reflected).collect();
                            pole(format!(
                                "term tau={tau_bits:?} sigma={sigma:?}: amplitude pole at {}, {}",
                                self.images[a], self.images[b]
                            ))
                        })?;
                        term *= f;
                    }
                }
                sum += term;
            }
            total += sign * sum;
        }
        Ok(total)
    }
}

/// `Υ(G, B, Θ, x)` for the given roots.
pub fn wave_function(spec: &LatticeSpec, roots: &[Rational], x: &[usize]) -> Result<Rational> {
    WaveInput::from_spec(spec, roots, x.to_vec())?.evaluate()
}

/// `Φ = Σ_σ ∏_{k<l} (z_σk − z_σl + 1)/(z_σk − z_σl) ∏_i φ^cl_{x_i}(z_σi)` with
/// `φ^cl_x(z) = ∏_{j<x} (z−v_j+1) ∏_{j>x} (z−v_j)`.
pub fn closed_wave(v: &[Rational], z: &[Rational], x: &[usize]) -> Result<Rational> {
    if x.len() != z.len() {
        return Err(Error::InvalidConfig(format!("{} magnons for {} roots", x.len(), z.len())));
    }
    let phi_cl = |x: usize, z: &Rational| -> Rational {
        v.iter()
            .enumerate()
            .filter(|(idx, _)| idx + 1 != x)
            .map(|(idx, vj)| if idx + 1 < x { z - vj + 1 } else { z - vj })
            .product()
    };
    let m = z.len();
    let mut total = Rational::zero();
    for sigma in (0..m).permutations(m) {
        let mut term = Rational::one();
        for k in 0..m {
            for l in k + 1..m {
                let d = &z[sigma[k]] - &z[sigma[l]];
                if d.is_zero() {
                    return Err(pole(format!("coincident roots {}", z[sigma[k]])));
                }
                term *= (&d + 1) / d;
            }
        }
        for (pos, &i) in sigma.iter().enumerate() {
            term *= phi_cl(x[pos], &z[i]);
        }
        total += term;
    }
    Ok(total)
}

/// `A(x)B(y) = h(y,x) B(y)A(x) − k(y,x) B(x)A(y)` and `[B(x),B(y)] = 0` for
/// the closed single-row blocks, `h(x,y) = (1+x−y)/(x−y)`, `k(x,y) = 1/(x−y)`.
pub fn check_closed_fcr(spec: &LatticeSpec, x: &Rational, y: &Rational) -> Result<bool> {
    let d = y - x;
    if d.is_zero() {
        return Err(pole("x = y".into()));
    }
    let h = (&d + 1) / &d;
    let k = d.recip()?;
    let chain = Chain::from_spec(spec)?;
    let mx = chain.single_row_dense(x, false);
    let my = chain.single_row_dense(y, false);
    let (ax, bx) = (mx.block(Block::A), mx.block(Block::B));
    let (ay, by) = (my.block(Block::A), my.block(Block::B));
    let bb = bx.mul(by) == by.mul(bx);
    let ab = ax.mul(by) == by.mul(ax).scale(&h).sub(&bx.mul(ay).scale(&k));
    Ok(bb && ab)
}

/// `𝓑(z) = (−1)^L 2z/(2z+1) Σ_{τ} (−1)^{|τ|} (q−z^τ−1) B(z^τ) A(−z^τ−1)` with
/// `z^τ ∈ {z, −z−1}` and `A`, `B` closed single-row blocks.
pub fn check_b_expansion(spec: &LatticeSpec, z: &Rational) -> Result<bool> {
    let den = z * 2 + 1;
    if den.is_zero() {
        return Err(pole("2z + 1 = 0".into()));
    }
    let chain = Chain::from_spec(spec)?;
    let q = spec.boundary_q();
    let mut sum = QuantumOperator::zeros(chain.len());
    for (sign, zt) in [(Rational::one(), z.clone()), (-Rational::one(), -z - 1)] {
        let b = chain.single_row_dense(&zt, false);
        let a = chain.single_row_dense(&(-&zt - 1), false);
        let term = b.block(Block::B).mul(a.block(Block::A));
        sum = sum.add(&term.scale(&(sign * (q - &zt - 1))));
    }
    let pref = Rational::sign_power(chain.len()) * z * 2 / den;
    let open = chain.double_row_dense(z);
    Ok(open.block(Block::B) == &sum.scale(&pref))
}

/// The open-chain Bethe state as a sum of closed-chain Bethe states:
/// `ψ_m = 𝒩 Σ_τ (−1)^{|τ|} ∏_{i<j} h(z^τ_i, −z^τ_j−1) ∏_i (q−z^τ_i−1) κ(−z^τ_i−1)
/// B(z^τ_1)⋯B(z^τ_m) Ω`, `κ(z) = ∏(z−v_i+1)`, `𝒩 = (−1)^{mL} ∏ 2z_i/(2z_i+1)`.
pub fn check_vecmitb(spec: &LatticeSpec, roots: &[Rational]) -> Result<bool> {
    let chain = Chain::from_spec(spec)?;
    let m = roots.len();
    let l = chain.len();
    let q = spec.boundary_q();
    let kappa = |z: &Rational| chain.inhomogeneities().iter().map(|v| z - v + 1).product::<Rational>();
    let omega = chain.reference_state();
    let mut total = ExactVector::zeros(chain.dim());
    for tau in 0..(1usize << m) {
        let zt: Vec<Rational> =
            roots.iter().enumerate().map(|(i, z)| if (tau >> i) & 1 == 1 { -z - 1 } else { z.clone() }).collect();
        let mut c = Rational::sign_power(tau.count_ones() as usize);
        for i in 0..m {
            for j in i + 1..m {
                let d = &zt[i] + &zt[j] + 1;
                if d.is_zero() {
                    return Err(pole(format!("h pole at {}, {}", zt[i], zt[j])));
                }
                c *= (&d + 1) / d;
            }
            c *= (q - &zt[i] - 1) * kappa(&(-&zt[i] - 1));
        }
        let psi = zt.iter().rev().fold(omega.clone(), |acc, z| chain.closed_block_on(z, Block::B, &acc));
        total.axpy(&c, psi.vector())?;
    }
    let mut norm = Rational::sign_power(m * l);
    for z in roots {
        let den = z * 2 + 1;
        if den.is_zero() {
            return Err(pole("2z + 1 = 0".into()));
        }
        norm *= z * 2 / den;
    }
    let open = chain.bethe_state(roots);
    Ok(open.vector() == &total.scale(&norm))
}

/// Components of closed-chain Bethe states `B(z_1)⋯B(z_m) S_G|1…1⟩` at the
/// product states `S_G|x⟩` equal `Φ(x)`, up to the sign from `S_G`.
pub fn check_closed_wave(spec: &LatticeSpec, roots: &[Rational]) -> Result<bool> {
    let chain = Chain::from_spec(spec)?;
    let l = chain.len();
    let psi = roots.iter().rev().fold(chain.reference_state(), |acc, z| chain.closed_block_on(z, Block::B, &acc));
    for x in (1..=l).combinations(roots.len()) {
        let mut labels = Vec::with_capacity(l);
        let mut sign = Rational::one();
        for site in 1..=l {
            let two = x.contains(&site);
            labels.push(match (chain.is_conjugate(site), two) {
                (false, false) => 1,
                (false, true) => 2,
                (true, false) => {
                    sign = -sign;
                    2
                }
                (true, true) => 1,
            });
        }
        let expected = sign * closed_wave(chain.inhomogeneities(), roots, &x)?;
        if psi.vector()[basis_index(&labels)] != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ_τ (−1)^{|τ|} (q−z_i^τ−1)(q−z_j^τ−1) k(z_i^τ, −z_j^τ−1)` over reflections
/// of both roots; vanishes identically.
pub fn two_reflection_sum(q: &Rational, zi: &Rational, zj: &Rational) -> Result<Rational> {
    let mut total = Rational::zero();
    for tau in 0..4usize {
        let a = if tau & 1 == 1 { -zi - 1 } else { zi.clone() };
        let b = if tau & 2 == 2 { -zj - 1 } else { zj.clone() };
        let d = &a + &b + 1;
        if d.is_zero() {
            return Err(pole(format!("k pole at {a}, {b}")));
        }
        let sign = Rational::sign_power(tau.count_ones() as usize);
        total += sign * (q - &a - 1) * (q - &b - 1) / d;
    }
    Ok(total)
}

/// Caches the wave tables and `Υ(x₀)` of one lattice.
pub struct CbaEvaluator {
    spec: LatticeSpec,
    tables: WaveTables,
    reference: Rational,
}

impl CbaEvaluator {
    pub fn new(spec: &LatticeSpec) -> Result<Self> {
        let v = inhomogeneities(spec)?;
        let roots = canonical_bethe_roots(spec)?;
        let tables = WaveTables::new(v.values(), roots.roots(), spec.boundary_q());
        let x0 = magnon_positions(spec, &ExternalConfig::reference(spec.n_lines()))?;
        let reference = tables.upsilon(&x0)?;
        if reference.is_zero() {
            return Err(Error::Degenerate("reference wave function vanishes".into()));
        }
        Ok(CbaEvaluator { spec: spec.clone(), tables, reference })
    }

    pub fn reference_wave(&self) -> &Rational {
        &self.reference
    }

    /// `(−1)^{I(β)} Υ(x)/Υ(x₀)`, zero when the ice rule fails.
    pub fn partition_function(&self, config: &ExternalConfig) -> Result<Rational> {
        if !ice_rule_satisfied(&self.spec, config)? {
            return Ok(Rational::zero());
        }
        let x = magnon_positions(&self.spec, config)?;
        let value = self.tables.upsilon(&x)?;
        Ok(Rational::sign_power(config.beta_twos()) * value / &self.reference)
    }
}

/// The state whose components are `(−1)^{I(β)} Υ(x)` at every ice-valid
/// configuration, read with `α_k` at `i_k` and `β_k` at `j_k`.
pub fn cba_state(spec: &LatticeSpec) -> Result<QuantumState> {
    let eval = CbaEvaluator::new(spec)?;
    let mut state = QuantumState::zeros(spec.chain_length());
    let mut vector = state.vector().clone();
    for config in ExternalConfig::enumerate(spec.n_lines()) {
        let z = eval.partition_function(&config)?;
        if !z.is_zero() {
            vector[spec.config_index(&config)?] = z * &eval.reference;
        }
    }
    state = QuantumState::new(spec.chain_length(), vector)?;
    Ok(state)
}

pub fn z_cba(spec: &LatticeSpec, config: &ExternalConfig) -> Result<Rational> {
    CbaEvaluator::new(spec)?.partition_function(config)
}

/// Closed-chain state `B(z_1)⋯B(z_m) S_G|1…1⟩`.
pub fn closed_bethe_state(spec: &LatticeSpec, roots: &[Rational]) -> Result<QuantumState> {
    let chain = Chain::from_spec(spec)?;
    Ok(roots.iter().rev().fold(chain.reference_state(), |acc, z| chain.closed_block_on(z, Block::B, &acc)))
}
