//! Direct construction of the invariant state: line and boundary-line
//! invariants, the initial configuration, and weaving to an arbitrary pairing
//! by adjacent end-point swaps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{ExactMatrix, ExactVector, Rational};
use crate::lattice::{inhomogeneities, Chord, ExternalConfig, LatticeSpec};
use crate::monodromy::{config_ratio, reference_component, AuxVector, Chain, QuantumState};
use crate::weights::{self, SMatrix};

/// `Ψ_∩ = (1, 0, 0, 1)`.
pub fn line_invariant() -> QuantumState {
    QuantumState::new(2, ExactVector::from_ints(&[1, 0, 0, 1])).expect("dim 4")
}

/// `Ψ_∧(θ) = (q+θ, 0, 0, q−θ)/(q+θ)`.
pub fn boundary_line_invariant(theta: &Rational, q: &Rational) -> Result<QuantumState> {
    let k = weights::k_matrix(theta, q)?;
    let v = k.matrix.tensor(&ExactMatrix::identity(2)).apply(line_invariant().vector())?;
    QuantumState::new(2, v)
}

/// `L₂(z+θ) L̄₁(z+θ−1) Ψ_∩ = (z+θ−1)(z+θ+1) Ψ_∩` and
/// `L̄₁(z−θ+1) L₂(z−θ) Ψ_∩ = (z−θ)(z−θ+2) Ψ_∩`, as identities in the
/// auxiliary space.
pub fn check_line_eigen(theta: &Rational, z: &Rational) -> (bool, bool) {
    let chain = Chain::new(vec![theta - 1, theta.clone()], vec![true, false], Rational::zero()).expect("two sites");
    let psi = line_invariant().into_vector();
    let holds = |hat: bool, eigen: Rational| {
        (0..2).all(|c| {
            let mut pair: AuxVector = [ExactVector::zeros(4), ExactVector::zeros(4)];
            pair[c] = psi.clone();
            let out = chain.apply_single_row(z, hat, pair.clone());
            out[0] == pair[0].scale(&eigen) && out[1] == pair[1].scale(&eigen)
        })
    };
    let un1 = holds(true, (z + theta - 1) * (z + theta + 1));
    let un2 = holds(false, (z - theta) * (z - theta + 2));
    (un1, un2)
}

/// `L₂(z−θ) 𝒦_a(z) L₂(z+θ) Ψ_∧ = K₂(θ) L₂(z+θ) 𝒦_a(z) L₂(z−θ) Ψ_∩` on
/// `aux ⊗ site 1 ⊗ site 2`. The boundary matrix on the right acts on the
/// same site as the Lax factors; on site 1 it would commute through them
/// and the relation fails.
pub fn check_bybevec(theta: &Rational, q: &Rational, z: &Rational) -> Result<bool> {
    bybevec_with_site(theta, q, z, 2)
}

pub(crate) fn bybevec_with_site(theta: &Rational, q: &Rational, z: &Rational, k_site: usize) -> Result<bool> {
    let (a, s1, s2) = (0, 1, 2);
    let l2 = |w: &Rational| weights::embed_pair(&weights::lax(w), s2, a, 3);
    let k_aux = weights::embed_single(&ExactMatrix::diagonal(&[q + z, q - z]), a, 3);
    let k1 = weights::embed_single(&weights::k_matrix(theta, q)?.matrix, if k_site == 1 { s1 } else { s2 }, 3);
    let lift = |psi: &QuantumState| ExactMatrix::identity(2).tensor(&ExactMatrix::column(psi.vector()));
    let wedge = lift(&boundary_line_invariant(theta, q)?);
    let cap = lift(&line_invariant());
    let lhs = l2(&(z - theta)).mul(&k_aux)?.mul(&l2(&(z + theta)))?.mul(&wedge)?;
    let rhs = k1.mul(&l2(&(z + theta)))?.mul(&k_aux)?.mul(&l2(&(z - theta)))?.mul(&cap)?;
    Ok(lhs == rhs)
}

/// Tensor product of line and boundary-line invariants; line `k` occupies
/// sites `(2(N−k)+1, 2(N−k+1))`.
pub fn initial_invariant(spec: &LatticeSpec) -> Result<QuantumState> {
    if !spec.is_initial() {
        return Err(Error::NotInitial);
    }
    spec.ensure_valid()?;
    let q = spec.boundary_q();
    (1..=spec.n_lines()).rev().try_fold(QuantumState::new(0, ExactVector::new(vec![Rational::one()]))?, |acc, k| {
        let pair = if spec.is_reflected(k) { boundary_line_invariant(spec.rapidity(k), q)? } else { line_invariant() };
        Ok(acc.tensor(&pair))
    })
}

/// Swap of sites `p, p+1` carrying an R-factor with argument `arg`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub p: usize,
    pub arg: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Plan {
    /// Fill target sites from `L` downwards, bubbling each end point up.
    #[default]
    HighestFirst,
    /// Fill target sites from 1 upwards, bubbling each end point down.
    LowestFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveSequence {
    pub moves: Vec<Move>,
    pub source: LatticeSpec,
    pub target: LatticeSpec,
}

#[derive(Serialize, Deserialize)]
struct MovesFile {
    moves: Vec<Move>,
}

impl MoveSequence {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MovesFile { moves: self.moves.clone() }).expect("moves serialize")
    }

    /// Pairing obtained by applying the swaps to the source pairing.
    pub fn replay(&self) -> Vec<Chord> {
        let l = self.source.chain_length();
        let mut at: Vec<(usize, bool)> = vec![(0, false); l + 1];
        for (idx, c) in self.source.chords().iter().enumerate() {
            at[c.start] = (idx, true);
            at[c.end] = (idx, false);
        }
        for m in &self.moves {
            at.swap(m.p, m.p + 1);
        }
        let mut chords = vec![Chord::new(0, 0); self.source.n_lines()];
        for (site, &(idx, is_start)) in at.iter().enumerate().skip(1) {
            if is_start {
                chords[idx].start = site;
            } else {
                chords[idx].end = site;
            }
        }
        chords
    }

    pub fn replay_matches_target(&self) -> bool {
        self.replay() == self.target.chords()
    }
}

/// Per-site bookkeeping while weaving: which end point sits where, with its
/// inhomogeneity and representation.
#[derive(Clone)]
struct Endpoint {
    line: usize,
    is_start: bool,
    v: Rational,
}

fn initial_layout(spec: &LatticeSpec) -> Result<Vec<Endpoint>> {
    let source = initial_spec(spec)?;
    let v = inhomogeneities(&source)?;
    let mut layout = vec![Endpoint { line: 0, is_start: false, v: Rational::zero() }; spec.chain_length()];
    for (idx, c) in source.chords().iter().enumerate() {
        layout[c.start - 1] = Endpoint { line: idx, is_start: true, v: v.get(c.start).clone() };
        layout[c.end - 1] = Endpoint { line: idx, is_start: false, v: v.get(c.end).clone() };
    }
    Ok(layout)
}

/// The initial pairing with the same lines, reflections and parameters.
pub fn initial_spec(spec: &LatticeSpec) -> Result<LatticeSpec> {
    LatticeSpec::initial(spec.reflected().iter().copied(), spec.rapidities().to_vec(), spec.boundary_q().clone())
}

pub fn plan_moves(spec: &LatticeSpec) -> Result<MoveSequence> {
    plan_moves_with(spec, Plan::HighestFirst)
}

pub fn plan_moves_with(spec: &LatticeSpec, plan: Plan) -> Result<MoveSequence> {
    spec.ensure_valid()?;
    let l = spec.chain_length();
    let mut layout = initial_layout(spec)?;
    let mut target = vec![(0usize, false); l];
    for (idx, c) in spec.chords().iter().enumerate() {
        target[c.start - 1] = (idx, true);
        target[c.end - 1] = (idx, false);
    }
    let find = |layout: &[Endpoint], want: (usize, bool)| {
        layout.iter().position(|e| (e.line, e.is_start) == want).expect("every end point present") + 1
    };
    let mut moves = Vec::new();
    let mut swap = |layout: &mut Vec<Endpoint>, p: usize| {
        moves.push(Move { p, arg: &layout[p].v - &layout[p - 1].v });
        layout.swap(p - 1, p);
    };
    match plan {
        Plan::HighestFirst => {
            for t in (1..=l).rev() {
                let s = find(&layout, target[t - 1]);
                for p in s..t {
                    swap(&mut layout, p);
                }
            }
        }
        Plan::LowestFirst => {
            for t in 1..=l {
                let s = find(&layout, target[t - 1]);
                for p in (t..s).rev() {
                    swap(&mut layout, p);
                }
            }
        }
    }
    Ok(MoveSequence { moves, source: initial_spec(spec)?, target: spec.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectResult {
    pub state: QuantumState,
    pub moves: MoveSequence,
    pub normalization_component: Rational,
}

impl DirectResult {
    pub fn partition_function(&self, config: &ExternalConfig) -> Result<Rational> {
        config_ratio(&self.moves.target, &self.state, config)
    }
}

pub fn build_invariant(spec: &LatticeSpec) -> Result<QuantumState> {
    Ok(solve_direct_with(spec, Plan::HighestFirst)?.state)
}

pub fn solve_direct(spec: &LatticeSpec) -> Result<DirectResult> {
    solve_direct_with(spec, Plan::HighestFirst)
}

pub fn solve_direct_with(spec: &LatticeSpec, plan: Plan) -> Result<DirectResult> {
    let moves = plan_moves_with(spec, plan)?;
    let state = replay_moves(&moves)?;
    let normalization_component = reference_component(spec, &state)?;
    Ok(DirectResult { state, moves, normalization_component })
}

/// Applies `ℙ C R(arg) C⁻¹` for each move, starting from the initial
/// invariant, where `C` is `S` on sites currently holding an end point.
pub fn replay_moves(moves: &MoveSequence) -> Result<QuantumState> {
    let l = moves.source.chain_length();
    let mut conjugate: Vec<bool> = initial_layout(&moves.source)?.iter().map(|e| !e.is_start).collect();
    let mut state = initial_invariant(&moves.source)?.into_vector();
    let s = SMatrix::new();
    let (s_fwd, s_inv) = (s.matrix.clone(), s.inverse());
    let id = ExactMatrix::identity(2);
    for m in &moves.moves {
        if m.p == 0 || m.p >= l {
            return Err(Error::SiteOutOfRange { site: m.p, len: l });
        }
        if (&m.arg + 1).is_zero() {
            return Err(Error::Pole(format!("R-factor at argument -1 (swap at {})", m.p)));
        }
        let (a, b) = (conjugate[m.p - 1], conjugate[m.p]);
        let pick = |flag: bool, x: &ExactMatrix| if flag { x.clone() } else { id.clone() };
        let c = pick(a, &s_fwd).tensor(&pick(b, &s_fwd));
        let c_inv = pick(a, &s_inv).tensor(&pick(b, &s_inv));
        let x = weights::permutation().mul(&c)?.mul(&weights::lax(&m.arg))?.mul(&c_inv)?;
        state = apply_two_site(&x, m.p, l, &state);
        conjugate.swap(m.p - 1, m.p);
    }
    let state = QuantumState::new(l, state)?;
    if state.is_zero() {
        return Err(Error::Degenerate("woven state vanishes".into()));
    }
    Ok(state)
}

/// A 4×4 operator on sites `p, p+1` (site `p` the more significant leg).
fn apply_two_site(op: &ExactMatrix, p: usize, chain_length: usize, v: &ExactVector) -> ExactVector {
    let hi = 1usize << (chain_length - p);
    let lo = hi >> 1;
    let mut out = ExactVector::zeros(v.dim());
    for (idx, x) in v.entries().iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let col = 2 * usize::from(idx & hi != 0) + usize::from(idx & lo != 0);
        let base = idx & !hi & !lo;
        for row in 0..4 {
            let m = &op[(row, col)];
            if m.is_zero() {
                continue;
            }
            let target = base | if row & 2 != 0 { hi } else { 0 } | if row & 1 != 0 { lo } else { 0 };
            out[target] += m * x;
        }
    }
    out
}

/// `Z = ⟨α,β|Ψ⟩ / ⟨α₀,β₀|Ψ⟩` from the woven state.
pub fn z_direct(spec: &LatticeSpec, config: &ExternalConfig) -> Result<Rational> {
    solve_direct(spec)?.partition_function(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aba::check_invariance;
    use crate::exact_arith::rat;

    fn figure1() -> LatticeSpec {
        LatticeSpec::new(
            vec![Chord::new(8, 3), Chord::new(7, 1), Chord::new(6, 5), Chord::new(4, 2)],
            [2, 3, 4],
            vec![rat(1, 3), rat(2, 7), rat(5, 11), rat(-3, 13)],
            rat(7, 5),
        )
        .unwrap()
    }

    fn single(reflected: bool, theta: Rational, q: Rational) -> LatticeSpec {
        let b: Vec<usize> = if reflected { vec![1] } else { vec![] };
        LatticeSpec::new(vec![Chord::new(2, 1)], b, vec![theta], q).unwrap()
    }

    #[test]
    fn line_vectors() {
        let cap = line_invariant();
        assert_eq!(cap.component(&[1, 1]), &Rational::one());
        assert_eq!(cap.component(&[2, 2]), &Rational::one());
        assert!(cap.component(&[1, 2]).is_zero() && cap.component(&[2, 1]).is_zero());
        let wedge = boundary_line_invariant(&rat(1, 1), &rat(2, 1)).unwrap();
        assert_eq!(wedge.vector(), &ExactVector::new(vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(1, 3)]));
        assert_eq!(boundary_line_invariant(&Rational::zero(), &rat(2, 1)).unwrap(), cap);
        assert!(matches!(boundary_line_invariant(&rat(-2, 1), &rat(2, 1)), Err(Error::Pole(_))));
    }

    #[test]
    fn bybevec_holds() {
        assert!(check_bybevec(&rat(2, 7), &rat(7, 5), &rat(1, 5)).unwrap());
        assert!(check_bybevec(&rat(-3, 11), &rat(3, 4), &rat(-5, 9)).unwrap());
        assert!(!bybevec_with_site(&rat(2, 7), &rat(7, 5), &rat(1, 5), 1).unwrap());
    }

    #[test]
    fn line_eigen_relations() {
        for (t, z) in [(rat(1, 3), rat(1, 6)), (rat(-2, 5), rat(7, 3))] {
            assert_eq!(check_line_eigen(&t, &z), (true, true));
        }
    }

    #[test]
    fn single_line_invariance() {
        let z = rat(1, 6);
        let spec = single(false, rat(1, 3), rat(2, 1));
        assert!(check_invariance(&spec, &line_invariant(), &z).unwrap().holds());
        let spec = single(true, rat(1, 3), rat(2, 1));
        let wedge = boundary_line_invariant(&rat(1, 3), &rat(2, 1)).unwrap();
        assert!(check_invariance(&spec, &wedge, &z).unwrap().holds());
        assert!(!check_invariance(&spec, &line_invariant(), &z).unwrap().holds());
    }

    #[test]
    fn initial_state_layout() {
        let spec = LatticeSpec::initial([2], vec![rat(1, 3), rat(2, 7)], rat(7, 5)).unwrap();
        let psi = initial_invariant(&spec).unwrap();
        let expected = boundary_line_invariant(&rat(2, 7), &rat(7, 5)).unwrap().tensor(&line_invariant());
        assert_eq!(psi, expected);
        assert!(matches!(initial_invariant(&figure1()), Err(Error::NotInitial)));
        for z in [rat(1, 5), rat(-3, 7)] {
            assert!(check_invariance(&spec, &psi, &z).unwrap().holds());
        }
        assert_eq!(z_direct(&spec, &ExternalConfig::reference(2)).unwrap(), Rational::one());
    }

    #[test]
    fn plans_replay() {
        let init = LatticeSpec::initial([], vec![rat(1, 3), rat(2, 7)], rat(7, 5)).unwrap();
        assert!(plan_moves(&init).unwrap().is_empty());
        let crossed = init.with_chords(vec![Chord::new(4, 2), Chord::new(3, 1)]).unwrap();
        let seq = plan_moves(&crossed).unwrap();
        assert!(!seq.is_empty());
        assert!(seq.replay_matches_target());
        for plan in [Plan::HighestFirst, Plan::LowestFirst] {
            let seq = plan_moves_with(&figure1(), plan).unwrap();
            assert!(seq.replay_matches_target());
            assert_eq!(seq.replay(), figure1().chords());
        }
    }

    #[test]
    fn moves_json() {
        let init = LatticeSpec::initial([], vec![rat(1, 3), rat(2, 7)], rat(7, 5)).unwrap();
        let crossed = init.with_chords(vec![Chord::new(4, 2), Chord::new(3, 1)]).unwrap();
        let json = plan_moves(&crossed).unwrap().to_json();
        assert!(json.starts_with(r#"{"moves":[{"p":"#));
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(parsed["moves"][0]["arg"].is_string());
    }

    #[test]
    fn crossed_lines_are_invariant() {
        let init = LatticeSpec::initial([], vec![rat(1, 3), rat(2, 7)], rat(7, 5)).unwrap();
        let crossed = init.with_chords(vec![Chord::new(4, 2), Chord::new(3, 1)]).unwrap();
        let psi = build_invariant(&crossed).unwrap();
        for z in [rat(1, 5), rat(2, 9), rat(-4, 3)] {
            assert!(check_invariance(&crossed, &psi, &z).unwrap().holds());
        }
    }

    #[test]
    fn figure1_is_invariant_under_both_plans() {
        let spec = figure1();
        let a = solve_direct_with(&spec, Plan::HighestFirst).unwrap();
        let b = solve_direct_with(&spec, Plan::LowestFirst).unwrap();
        assert!(a.state.proportionality(&b.state).is_some());
        assert!(check_invariance(&spec, &a.state, &rat(1, 5)).unwrap().holds());
    }

    #[test]
    fn single_line_values() {
        let spec = single(false, rat(1, 3), rat(2, 1));
        let cfg = ExternalConfig::new(vec![1], vec![2]).unwrap();
        assert_eq!(z_direct(&spec, &cfg).unwrap(), Rational::zero());
        let spec = single(true, rat(1, 3), rat(2, 1));
        let cfg = ExternalConfig::new(vec![2], vec![2]).unwrap();
        assert_eq!(z_direct(&spec, &cfg).unwrap(), rat(5, 7));
    }
}
