//! Algebraic Bethe ansatz: Bethe states `B(z_1)⋯B(z_m) Ω`, the partition
//! function from them, invariance and Baxter-equation checks, unwanted terms,
//! open-chain exchange relations and the reduction to a shorter chain.

use crate::error::{Error, Result};
use crate::exact_arith::{ExactVector, Rational};
use crate::lattice::{canonical_bethe_roots, BetheRootSet, ExternalConfig, LatticeSpec};
use crate::monodromy::{
    config_ratio, d_tilde_from, lambda, reference_component, two_z_plus_one_inverse, vacuum_alpha,
    vacuum_delta_tilde, xi, Block, Chain, QuantumOperator, QuantumState,
};

/// `B(z_1)⋯B(z_m) Ω`.
pub fn bethe_state(spec: &LatticeSpec, roots: &BetheRootSet) -> Result<QuantumState> {
    let psi = Chain::from_spec(spec)?.bethe_state(roots.roots());
    if psi.is_zero() {
        return Err(Error::Degenerate("Bethe state vanishes".into()));
    }
    Ok(psi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbaResult {
    pub spec: LatticeSpec,
    pub bethe_state: QuantumState,
    pub roots: BetheRootSet,
    pub normalization_component: Rational,
}

impl AbaResult {
    pub fn partition_function(&self, config: &ExternalConfig) -> Result<Rational> {
        config_ratio(&self.spec, &self.bethe_state, config)
    }
}

/// Bethe state at the canonical roots.
pub fn solve_aba(spec: &LatticeSpec) -> Result<AbaResult> {
    solve_aba_with_roots(spec, canonical_bethe_roots(spec)?)
}

pub fn solve_aba_with_roots(spec: &LatticeSpec, roots: BetheRootSet) -> Result<AbaResult> {
    let bethe_state = bethe_state(spec, &roots)?;
    let normalization_component = reference_component(spec, &bethe_state)?;
    Ok(AbaResult { spec: spec.clone(), bethe_state, roots, normalization_component })
}

pub fn z_aba(spec: &LatticeSpec, config: &ExternalConfig) -> Result<Rational> {
    solve_aba(spec)?.partition_function(config)
}

/// Outcome of the four block conditions of `U(z)Ψ = Λ(z) 𝒦(z) Ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub b_annihilates: bool,
    pub c_annihilates: bool,
    pub a_eigen: bool,
    pub d_eigen: bool,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.b_annihilates && self.c_annihilates && self.a_eigen && self.d_eigen
    }
}

impl std::fmt::Display for InvarianceReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "B·Ψ=0: {}, C·Ψ=0: {}, A eigen: {}, D eigen: {}", self.b_annihilates, self.c_annihilates, self.a_eigen, self.d_eigen)
    }
}

pub fn check_invariance(spec: &LatticeSpec, state: &QuantumState, z: &Rational) -> Result<InvarianceReport> {
    let chain = Chain::from_spec(spec)?;
    if state.chain_length() != chain.len() {
        return Err(Error::DimensionMismatch(format!(
            "state on {} sites, chain of length {}",
            state.chain_length(),
            chain.len()
        )));
    }
    let act = chain.blocks_on(z, state);
    let lam = lambda(spec, z);
    let q = spec.boundary_q();
    Ok(InvarianceReport {
        b_annihilates: act.b.is_zero(),
        c_annihilates: act.c.is_zero(),
        a_eigen: act.a == state.scale(&(&lam * (q + z))),
        d_eigen: act.d == state.scale(&(&lam * (q - z))),
    })
}

/// `Ξ(z) Q(z−1)/Q(z) = Λ(z)` and `Ξ(z−1) Q(z+1)/Q(z) = Λ(z)` with the
/// canonical `Q`.
pub fn check_baxter(spec: &LatticeSpec, z: &Rational) -> Result<(bool, bool)> {
    let roots = canonical_bethe_roots(spec)?;
    let qz = roots.q_function(z);
    if qz.is_zero() {
        return Err(Error::Pole(format!("Q({z}) = 0")));
    }
    let lam = lambda(spec, z);
    let first = xi(spec, z) * roots.q_function(&(z - 1)) / &qz == lam;
    let second = xi(spec, &(z - 1)) * roots.q_function(&(z + 1)) / &qz == lam;
    Ok((first, second))
}

fn nonzero(x: Rational, what: &str) -> Result<Rational> {
    if x.is_zero() {
        return Err(Error::Pole(format!("{what} = 0")));
    }
    Ok(x)
}

/// Coefficients of the open-chain exchange relations.
pub mod coefficients {
    use super::nonzero;
    use crate::error::Result;
    use crate::exact_arith::Rational;

    pub fn h_a(x: &Rational, y: &Rational) -> Result<Rational> {
        Ok((x + y) * (x - y - 1) / (nonzero(x - y, "x - y")? * nonzero(x + y + 1, "x + y + 1")?))
    }

    pub fn g_a(x: &Rational, y: &Rational) -> Result<Rational> {
        Ok(y * 2 / (nonzero(x - y, "x - y")? * nonzero(y * 2 + 1, "2y + 1")?))
    }

    pub fn g_d(x: &Rational, y: &Rational) -> Result<Rational> {
        Ok(-Rational::one() / nonzero(x + y + 1, "x + y + 1")?)
    }

    pub fn h_d(x: &Rational, y: &Rational) -> Result<Rational> {
        Ok((x - y + 1) * (x + y + 2) / (nonzero(x - y, "x - y")? * nonzero(x + y + 1, "x + y + 1")?))
    }

    pub fn k_a(x: &Rational, y: &Rational) -> Result<Rational> {
        let den = nonzero(x * 2 + 1, "2x + 1")? * nonzero(y * 2 + 1, "2y + 1")? * nonzero(x + y + 1, "x + y + 1")?;
        Ok(y * 4 * (x + 1) / den)
    }

    pub fn k_d(x: &Rational, y: &Rational) -> Result<Rational> {
        Ok((x + 1) * -2 / (nonzero(x - y, "x - y")? * nonzero(x * 2 + 1, "2x + 1")?))
    }
}

fn other_roots(roots: &[Rational], k: usize) -> Result<impl Iterator<Item = &Rational>> {
    if k == 0 || k > roots.len() {
        return Err(Error::InvalidConfig(format!("root index {k} outside 1..={}", roots.len())));
    }
    Ok(roots.iter().enumerate().filter(move |(i, _)| *i != k - 1).map(|(_, r)| r))
}

/// Closed forms of `(M_k, N_k)` in terms of `α`, `δ̃` and `Q`.
pub fn unwanted_terms(spec: &LatticeSpec, roots: &BetheRootSet, z: &Rational, k: usize) -> Result<(Rational, Rational)> {
    let zs = roots.roots();
    let mut prod = Rational::one();
    for zi in other_roots(zs, k)? {
        let zk = &zs[k - 1];
        prod *= nonzero((zk - zi) * (zk + zi + 1), "(z_k - z_i)(z_k + z_i + 1)")?.recip()?;
    }
    let zk = &zs[k - 1];
    let alpha_term = vacuum_alpha(spec, zk) * roots.q_function(&(zk - 1));
    let delta_term = vacuum_delta_tilde(spec, zk)? * roots.q_function(&(zk + 1));
    let two_zk1 = nonzero(zk * 2 + 1, "2z_k + 1")?;
    let zk1 = nonzero(zk + 1, "z_k + 1")?;
    let minus = nonzero(z - zk, "z - z_k")?;
    let plus = nonzero(z + zk + 1, "z + z_k + 1")?;
    let m = -(&alpha_term / (&minus * &two_zk1) + &delta_term / (&plus * &zk1 * 2)) * &prod;
    let pref = (z * 2 + 2) * two_z_plus_one_inverse(z)?;
    let n = -pref * (&alpha_term / (&plus * &two_zk1) + &delta_term / (&minus * &zk1 * 2)) * &prod;
    Ok((m, n))
}

/// `(M_k, N_k)` from the exchange-relation coefficients.
pub fn unwanted_terms_from_coefficients(
    spec: &LatticeSpec,
    roots: &BetheRootSet,
    z: &Rational,
    k: usize,
) -> Result<(Rational, Rational)> {
    use coefficients::*;
    let zs = roots.roots();
    let zk = &zs[k.max(1) - 1];
    let mut prod_a = Rational::one();
    let mut prod_d = Rational::one();
    for zi in other_roots(zs, k)? {
        prod_a *= h_a(zk, zi)?;
        prod_d *= h_d(zk, zi)?;
    }
    let alpha = vacuum_alpha(spec, zk) * &prod_a;
    let delta = vacuum_delta_tilde(spec, zk)? * &prod_d;
    let m = g_a(z, zk)? * &alpha + g_d(z, zk)? * &delta;
    let n = k_a(z, zk)? * &alpha + k_d(z, zk)? * &delta;
    Ok((m, n))
}

/// `A(z)ψ = α Q(z−1)/Q(z) ψ + Σ M_k ψ⁽ᵏ⁾` and the `D̃` counterpart, checked on
/// states for arbitrary (off-shell) roots.
pub fn check_diagonal_action(spec: &LatticeSpec, roots: &BetheRootSet, z: &Rational) -> Result<bool> {
    let chain = Chain::from_spec(spec)?;
    let zs = roots.roots();
    let psi = chain.bethe_state(zs);
    let act = chain.blocks_on(z, &psi);
    let qz = nonzero(roots.q_function(z), "Q(z)")?;
    let mut expect_a = psi.vector().scale(&(vacuum_alpha(spec, z) * roots.q_function(&(z - 1)) / &qz));
    let mut expect_d = psi.vector().scale(&(vacuum_delta_tilde(spec, z)? * roots.q_function(&(z + 1)) / &qz));
    for k in 1..=zs.len() {
        let mut swapped = zs.to_vec();
        swapped[k - 1] = z.clone();
        let psi_k = chain.bethe_state(&swapped);
        let (m, n) = unwanted_terms(spec, roots, z, k)?;
        expect_a.axpy(&m, psi_k.vector())?;
        expect_d.axpy(&n, psi_k.vector())?;
    }
    let shift = two_z_plus_one_inverse(z)?;
    let d_tilde = act.d.vector().sub(&act.a.vector().scale(&shift))?;
    Ok(act.a.vector() == &expect_a && d_tilde == expect_d)
}

/// `[B(x),B(y)] = 0` and the `A B`, `D̃ B` exchange relations as operator
/// identities.
pub fn check_fcr_open(spec: &LatticeSpec, x: &Rational, y: &Rational) -> Result<bool> {
    use coefficients::*;
    let coeffs = [h_a(x, y)?, g_a(x, y)?, g_d(x, y)?, h_d(x, y)?, k_a(x, y)?, k_d(x, y)?];
    let [ha, ga, gd, hd, ka, kd] = coeffs;
    let chain = Chain::from_spec(spec)?;
    let ux = chain.double_row_dense(x);
    let uy = chain.double_row_dense(y);
    let (ax, bx, dx) = (ux.block(Block::A), ux.block(Block::B), d_tilde_from(&ux, x)?);
    let (ay, by, dy) = (uy.block(Block::A), uy.block(Block::B), d_tilde_from(&uy, y)?);
    let bb = bx.mul(by) == by.mul(bx);
    let combo = |terms: &[(&Rational, QuantumOperator)]| {
        terms.iter().fold(QuantumOperator::zeros(chain.len()), |acc, (c, op)| acc.add(&op.scale(c)))
    };
    let ab = ax.mul(by) == combo(&[(&ha, by.mul(ax)), (&ga, bx.mul(ay)), (&gd, bx.mul(&dy))]);
    let db = dx.mul(by) == combo(&[(&hd, by.mul(&dx)), (&ka, bx.mul(ay)), (&kd, bx.mul(&dy))]);
    Ok(bb && ab && db)
}

/// `B(z) = −z/(z+1) · B(−z−1)`.
pub fn check_b_reflection(spec: &LatticeSpec, z: &Rational) -> Result<bool> {
    if z.is_zero() {
        return Err(Error::Pole("z = 0".into()));
    }
    let factor = -z / nonzero(z + 1, "z + 1")?;
    let chain = Chain::from_spec(spec)?;
    let lhs = chain.double_row_dense(z);
    let rhs = chain.double_row_dense(&(-z - 1));
    Ok(lhs.block(Block::B) == &rhs.block(Block::B).scale(&factor))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    /// `ψ_{2N,m} = ψ_{2N−2,m−1} ⊗ φ` with the predicted prefactor.
    pub factorizes: bool,
    /// Components with `α₁ ≠ β₁` vanish.
    pub mixed_vanish: bool,
    pub prefactor: Rational,
}

impl ReductionReport {
    pub fn holds(&self) -> bool {
        self.factorizes && self.mixed_vanish
    }
}

/// `h(t) = 4t(t+1)(q+t) ∏_{i≥2} (t+z_i+2)(t−z_i−1)(t+z_i)(t−z_i+1)
///        × ∏_{k≤2N−2} (t+v_k)(t−v_k+1)`.
pub fn reduction_prefactor(t: &Rational, q: &Rational, rest_roots: &[Rational], sub_v: &[Rational]) -> Rational {
    let mut h = t * 4 * (t + 1) * (q + t);
    for zi in rest_roots {
        h *= (t + zi + 2) * (t - zi - 1) * (t + zi) * (t - zi + 1);
    }
    for v in sub_v {
        h *= (t + v) * (t - v + 1);
    }
    h
}

/// Line 1 must join sites `(2N, 2N−1)`. The Bethe state with roots
/// `(±θ₁, rest_roots…)` is compared with the state of the chain without
/// sites `2N−1, 2N` (roots `rest_roots`) tensored with `h(±θ₁)Ψ_∧` for a
/// reflected line 1 and `h(−θ₁)Ψ_∩` otherwise.
pub fn check_reduction(spec: &LatticeSpec, rest_roots: &[Rational]) -> Result<ReductionReport> {
    let n = spec.n_lines();
    let l = spec.chain_length();
    let first = spec.chord(1);
    if first.start != l || first.end != l - 1 {
        return Err(Error::InvalidSpec(format!("line 1 joins ({},{}), expected ({l},{})", first.start, first.end, l - 1)));
    }
    if n < 1 {
        return Err(Error::InvalidSpec("no lines".into()));
    }
    let chain = Chain::from_spec(spec)?;
    let sub = chain.truncate(l - 2);
    let theta = spec.rapidity(1);
    let q = spec.boundary_q();
    let t = spec.signed_rapidity(1);
    let mut roots = vec![t.clone()];
    roots.extend_from_slice(rest_roots);
    let big = chain.bethe_state(&roots);
    let small = sub.bethe_state(rest_roots);
    let corner = if spec.is_reflected(1) { (q - theta).checked_div(&(q + theta))? } else { Rational::one() };
    let phi = QuantumState::new(2, ExactVector::new(vec![Rational::one(), Rational::zero(), Rational::zero(), corner]))?;
    let prefactor = reduction_prefactor(&t, q, rest_roots, sub.inhomogeneities());
    let predicted = small.tensor(&phi).scale(&prefactor);
    let mixed_vanish = big
        .vector()
        .entries()
        .iter()
        .enumerate()
        .filter(|(idx, _)| ((idx >> 1) & 1) != (idx & 1))
        .all(|(_, x)| x.is_zero());
    Ok(ReductionReport { factorizes: big == predicted, mixed_vanish, prefactor })
}
