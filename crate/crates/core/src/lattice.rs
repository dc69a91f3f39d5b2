//! Problem instances: chord pairing, reflected lines, rapidities and the
//! boundary parameter, plus everything that is read off them directly.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::Rational;

/// A line entering the perimeter at `start` and leaving at `end`, `start > end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chord {
    pub start: usize,
    pub end: usize,
}

impl Chord {
    pub fn new(start: usize, end: usize) -> Self {
        Chord { start, end }
    }
}

/// Complete problem instance. Lines are numbered `1..=N` in chord order.
///
/// Construction only checks that the per-line arrays have matching lengths;
/// use [`validate_spec`] (or [`LatticeSpec::ensure_valid`]) before computing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecFile", into = "SpecFile")]
pub struct LatticeSpec {
    chords: Vec<Chord>,
    reflected: BTreeSet<usize>,
    rapidities: Vec<Rational>,
    boundary_q: Rational,
}

impl LatticeSpec {
    pub fn new(
        chords: Vec<Chord>,
        reflected: impl IntoIterator<Item = usize>,
        rapidities: Vec<Rational>,
        boundary_q: Rational,
    ) -> Result<Self> {
        if chords.len() != rapidities.len() {
            return Err(Error::InvalidSpec(format!(
                "{} chords but {} rapidities",
                chords.len(),
                rapidities.len()
            )));
        }
        Ok(LatticeSpec { chords, reflected: reflected.into_iter().collect(), rapidities, boundary_q })
    }

    /// The initial configuration `((2N,2N-1),…,(2,1))`.
    pub fn initial(
        reflected: impl IntoIterator<Item = usize>,
        rapidities: Vec<Rational>,
        boundary_q: Rational,
    ) -> Result<Self> {
        let n = rapidities.len();
        let chords = (1..=n).map(|k| Chord::new(2 * (n - k + 1), 2 * (n - k) + 1)).collect();
        Self::new(chords, reflected, rapidities, boundary_q)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn n_lines(&self) -> usize {
        self.chords.len()
    }

    pub fn chain_length(&self) -> usize {
        2 * self.chords.len()
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    /// Line `k`, 1-based.
    pub fn chord(&self, k: usize) -> Chord {
        self.chords[k - 1]
    }

    pub fn reflected(&self) -> &BTreeSet<usize> {
        &self.reflected
    }

    pub fn is_reflected(&self, k: usize) -> bool {
        self.reflected.contains(&k)
    }

    pub fn rapidities(&self) -> &[Rational] {
        &self.rapidities
    }

    /// Rapidity of line `k`, 1-based.
    pub fn rapidity(&self, k: usize) -> &Rational {
        &self.rapidities[k - 1]
    }

    /// The rapidity with the sign it carries in Λ, Ξ and Q: `+θ_k` for
    /// reflected lines, `−θ_k` otherwise.
    pub fn signed_rapidity(&self, k: usize) -> Rational {
        if self.is_reflected(k) {
            self.rapidity(k).clone()
        } else {
            -self.rapidity(k)
        }
    }

    pub fn boundary_q(&self) -> &Rational {
        &self.boundary_q
    }

    pub fn is_initial(&self) -> bool {
        let n = self.n_lines();
        self.chords.iter().enumerate().all(|(idx, c)| {
            let k = idx + 1;
            c.start == 2 * (n - k + 1) && c.end == 2 * (n - k) + 1
        })
    }

    /// Same instance with a different pairing.
    pub fn with_chords(&self, chords: Vec<Chord>) -> Result<Self> {
        Self::new(chords, self.reflected.iter().copied(), self.rapidities.clone(), self.boundary_q.clone())
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = validate_spec(self);
        if report.ok() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(report.to_string()))
        }
    }

    /// 0-based basis index of the product state with `alpha_k` at `i_k` and
    /// `beta_k` at `j_k` (site 1 most significant).
    pub fn config_index(&self, config: &ExternalConfig) -> Result<usize> {
        config.check_len(self.n_lines())?;
        let l = self.chain_length();
        let mut idx = 0usize;
        for (k, chord) in self.chords.iter().enumerate() {
            if config.alpha[k] == 2 {
                idx |= 1 << (l - chord.start);
            }
            if config.beta[k] == 2 {
                idx |= 1 << (l - chord.end);
            }
        }
        Ok(idx)
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.chords.iter().map(|c| format!("({},{})", c.start, c.end)).collect();
        let b: Vec<String> = self.reflected.iter().map(ToString::to_string).collect();
        let th: Vec<String> = self.rapidities.iter().map(ToString::to_string).collect();
        write!(
            f,
            "G=({}) B={{{}}} theta=({}) q={}",
            g.join(","),
            b.join(","),
            th.join(","),
            self.boundary_q
        )
    }
}

#[derive(Serialize, Deserialize)]
struct LineFile {
    start: usize,
    end: usize,
    reflected: bool,
    rapidity: Rational,
}

#[derive(Serialize, Deserialize)]
struct SpecFile {
    n: usize,
    lines: Vec<LineFile>,
    q: Rational,
}

impl TryFrom<SpecFile> for LatticeSpec {
    type Error = Error;

    fn try_from(file: SpecFile) -> Result<Self> {
        if file.n != file.lines.len() {
            return Err(Error::InvalidSpec(format!("n = {} but {} lines given", file.n, file.lines.len())));
        }
        let chords = file.lines.iter().map(|l| Chord::new(l.start, l.end)).collect();
        let reflected = file.lines.iter().enumerate().filter(|(_, l)| l.reflected).map(|(k, _)| k + 1);
        let rapidities = file.lines.iter().map(|l| l.rapidity.clone()).collect();
        LatticeSpec::new(chords, reflected.collect::<Vec<_>>(), rapidities, file.q)
    }
}

impl From<LatticeSpec> for SpecFile {
    fn from(spec: LatticeSpec) -> Self {
        let lines = spec
            .chords
            .iter()
            .zip(&spec.rapidities)
            .enumerate()
            .map(|(idx, (c, th))| LineFile {
                start: c.start,
                end: c.end,
                reflected: spec.reflected.contains(&(idx + 1)),
                rapidity: th.clone(),
            })
            .collect();
        SpecFile { n: spec.chords.len(), lines, q: spec.boundary_q }
    }
}

/// Boundary state labels on the perimeter: `alpha[k]` at `i_k`, `beta[k]` at `j_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExternalConfig {
    pub alpha: Vec<u8>,
    pub beta: Vec<u8>,
}

impl ExternalConfig {
    pub fn new(alpha: Vec<u8>, beta: Vec<u8>) -> Result<Self> {
        let config = ExternalConfig { alpha, beta };
        config.check_labels()?;
        if config.alpha.len() != config.beta.len() {
            return Err(Error::InvalidConfig(format!(
                "alpha has {} entries, beta has {}",
                config.alpha.len(),
                config.beta.len()
            )));
        }
        Ok(config)
    }

    /// Parses label strings such as `"2112"`.
    pub fn from_labels(alpha: &str, beta: &str) -> Result<Self> {
        let parse = |text: &str| {
            text.chars()
                .map(|c| match c {
                    '1' => Ok(1),
                    '2' => Ok(2),
                    other => Err(Error::InvalidConfig(format!("state label {other:?} not in {{1,2}}"))),
                })
                .collect::<Result<Vec<u8>>>()
        };
        ExternalConfig::new(parse(alpha)?, parse(beta)?)
    }

    /// The all-ones configuration `(α₀, β₀)`.
    pub fn reference(n: usize) -> Self {
        ExternalConfig { alpha: vec![1; n], beta: vec![1; n] }
    }

    /// All `4^n` configurations; `alpha[0]` is the most significant label.
    pub fn enumerate(n: usize) -> impl Iterator<Item = ExternalConfig> {
        (0..1usize << (2 * n)).map(move |code| {
            let label = |bit: usize| 1 + ((code >> (2 * n - 1 - bit)) & 1) as u8;
            ExternalConfig { alpha: (0..n).map(label).collect(), beta: (n..2 * n).map(label).collect() }
        })
    }

    pub fn n_lines(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_reference(&self) -> bool {
        self.alpha.iter().chain(&self.beta).all(|&s| s == 1)
    }

    /// Number of `beta_k = 2`.
    pub fn beta_twos(&self) -> usize {
        self.beta.iter().filter(|&&b| b == 2).count()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExternalConfig = serde_json::from_str(text)?;
        ExternalConfig::new(config.alpha, config.beta)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.alpha.len() != n || self.beta.len() != n {
            return Err(Error::InvalidConfig(format!(
                "expected {n} labels each, got alpha {} and beta {}",
                self.alpha.len(),
                self.beta.len()
            )));
        }
        self.check_labels()
    }

    fn check_labels(&self) -> Result<()> {
        match self.alpha.iter().chain(&self.beta).find(|&&s| s != 1 && s != 2) {
            Some(s) => Err(Error::InvalidConfig(format!("state label {s} not in {{1,2}}"))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for ExternalConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: String = self.alpha.iter().map(|s| char::from(b'0' + s)).collect();
        let b: String = self.beta.iter().map(|s| char::from(b'0' + s)).collect();
        write!(f, "alpha={a} beta={b}")
    }
}

/// Chain inhomogeneities `v_1..v_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InhomogeneityAssignment {
    v: Vec<Rational>,
}

impl InhomogeneityAssignment {
    pub fn new(v: Vec<Rational>) -> Self {
        InhomogeneityAssignment { v }
    }

    /// `v_site`, 1-based.
    pub fn get(&self, site: usize) -> &Rational {
        &self.v[site - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.v
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetheRootSet {
    roots: Vec<Rational>,
}

impl BetheRootSet {
    pub fn new(roots: Vec<Rational>) -> Self {
        BetheRootSet { roots }
    }

    pub fn roots(&self) -> &[Rational] {
        &self.roots
    }

    pub fn magnon_count(&self) -> usize {
        self.roots.len()
    }

    /// Baxter's `Q(z) = ∏ (z − z_i)(z + z_i + 1)` over these roots.
    pub fn q_function(&self, z: &Rational) -> Rational {
        self.roots.iter().map(|zi| (z - zi) * (z + zi + 1)).product()
    }

    /// Replace root `k` (0-based) by its partner `−z_k − 1`.
    pub fn reflect(&self, k: usize) -> BetheRootSet {
        let mut roots = self.roots.clone();
        roots[k] = -&roots[k] - 1;
        BetheRootSet { roots }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Endpoints are not a perfect matching of `1..=2N`.
    Perimeter,
    /// `i_k > j_k` or `i_1 > i_2 > …` broken.
    Ordering,
    /// Reflected-line index outside `1..=N`.
    ReflectedSet,
    Genericity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, detail: String) {
        self.violations.push(Violation { kind, detail });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{:?}: {}", v.kind, v.detail)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks the perimeter matching, the ordering `i_1 > i_2 > … > i_N` with
/// `i_k > j_k`, and genericity of the parameters:
///
/// * `θ_k ± θ_l ∉ {0, ±1, ±2}` for `k ≠ l`,
/// * `θ_k ∉ {0, ±1/2, ±1}`,
/// * `q ± θ_k ∉ {0, ±1}`,
/// * `q ∉ {0, ±1/2}`.
pub fn validate_spec(spec: &LatticeSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = spec.n_lines();
    let l = 2 * n;

    let mut seen = vec![0usize; l + 1];
    for (idx, c) in spec.chords.iter().enumerate() {
        for p in [c.start, c.end] {
            if p == 0 || p > l {
                report.push(ViolationKind::Perimeter, format!("line {}: point {p} outside 1..={l}", idx + 1));
            } else {
                seen[p] += 1;
            }
        }
        if c.start <= c.end {
            report.push(
                ViolationKind::Ordering,
                format!("line {}: start {} not greater than end {}", idx + 1, c.start, c.end),
            );
        }
    }
    for (p, &count) in seen.iter().enumerate().skip(1) {
        if count != 1 {
            report.push(ViolationKind::Perimeter, format!("point {p} used {count} times"));
        }
    }
    for (k, pair) in spec.chords.windows(2).enumerate() {
        if pair[0].start <= pair[1].start {
            report.push(
                ViolationKind::Ordering,
                format!("i_{} = {} not greater than i_{} = {}", k + 1, pair[0].start, k + 2, pair[1].start),
            );
        }
    }
    for &k in &spec.reflected {
        if k == 0 || k > n {
            report.push(ViolationKind::ReflectedSet, format!("reflected line {k} outside 1..={n}"));
        }
    }

    let half = Rational::new(1, 2).expect("1/2");
    let ints = |range: std::ops::RangeInclusive<i64>| range.map(Rational::from_integer).collect::<Vec<_>>();
    let forbidden_pair = ints(-2..=2);
    let forbidden_q_theta = ints(-1..=1);
    let forbidden_theta = [Rational::zero(), half.clone(), -&half, Rational::one(), -Rational::one()];
    let forbidden_q = [Rational::zero(), half.clone(), -&half];
    let th = &spec.rapidities;
    let q = &spec.boundary_q;
    let mut generic = |cond: bool, detail: String| {
        if cond {
            report.push(ViolationKind::Genericity, detail);
        }
    };
    for k in 0..th.len() {
        for m in (k + 1)..th.len() {
            let sum = &th[k] + &th[m];
            let diff = &th[k] - &th[m];
            generic(forbidden_pair.contains(&sum), format!("theta_{} + theta_{} = {sum}", k + 1, m + 1));
            generic(forbidden_pair.contains(&diff), format!("theta_{} - theta_{} = {diff}", k + 1, m + 1));
        }
        generic(forbidden_theta.contains(&th[k]), format!("theta_{} = {}", k + 1, th[k]));
        let qp = q + &th[k];
        let qm = q - &th[k];
        generic(forbidden_q_theta.contains(&qp), format!("q + theta_{} = {qp}", k + 1));
        generic(forbidden_q_theta.contains(&qm), format!("q - theta_{} = {qm}", k + 1));
    }
    generic(forbidden_q.contains(q), format!("q = {q}"));
    report
}

/// `v_{i_k} = θ_k`, `v_{j_k} = −θ_k − 1` for reflected lines and `θ_k − 1`
/// otherwise.
pub fn inhomogeneities(spec: &LatticeSpec) -> Result<InhomogeneityAssignment> {
    spec.ensure_valid()?;
    let mut v = vec![Rational::zero(); spec.chain_length()];
    for (idx, c) in spec.chords.iter().enumerate() {
        let k = idx + 1;
        let th = spec.rapidity(k);
        v[c.start - 1] = th.clone();
        v[c.end - 1] = if spec.is_reflected(k) { -th - 1 } else { th - 1 };
    }
    Ok(InhomogeneityAssignment::new(v))
}

/// `z_k = θ_k` for reflected lines, `z_k = −θ_k` otherwise. The partner
/// branch `−z_k − 1` is never chosen here.
pub fn canonical_bethe_roots(spec: &LatticeSpec) -> Result<BetheRootSet> {
    spec.ensure_valid()?;
    Ok(BetheRootSet::new((1..=spec.n_lines()).map(|k| spec.signed_rapidity(k)).collect()))
}

/// `Q(z) = ∏_{k∈B}(z−θ_k)(z+θ_k+1) ∏_{k∉B}(z+θ_k)(z−θ_k+1)`.
pub fn q_function(spec: &LatticeSpec, z: &Rational) -> Rational {
    (1..=spec.n_lines())
        .map(|k| {
            let s = spec.signed_rapidity(k);
            (z - &s) * (z + &s + 1)
        })
        .product()
}

/// Sorted magnon sites `{i_k | α_k = 2} ∪ {j_k | β_k = 1}`.
pub fn magnon_positions(spec: &LatticeSpec, config: &ExternalConfig) -> Result<Vec<usize>> {
    config.check_len(spec.n_lines())?;
    let mut x: Vec<usize> = spec
        .chords
        .iter()
        .enumerate()
        .flat_map(|(k, c)| {
            let a = (config.alpha[k] == 2).then_some(c.start);
            let b = (config.beta[k] == 1).then_some(c.end);
            a.into_iter().chain(b)
        })
        .collect();
    x.sort_unstable();
    Ok(x)
}

/// Half filling: `#{α_k = 2} + #{β_k = 1} = N`.
pub fn ice_rule_satisfied(spec: &LatticeSpec, config: &ExternalConfig) -> Result<bool> {
    config.check_len(spec.n_lines())?;
    let magnons = config.alpha.iter().filter(|&&a| a == 2).count() + config.beta.iter().filter(|&&b| b == 1).count();
    Ok(magnons == spec.n_lines())
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn single(reflected: bool, theta: Rational) -> LatticeSpec {
        let b: Vec<usize> = if reflected { vec![1] } else { vec![] };
        LatticeSpec::new(vec![Chord::new(2, 1)], b, vec![theta], rat(2, 1)).unwrap()
    }

    #[test]
    fn figure1_is_valid() {
        let report = validate_spec(&figure1());
        assert!(report.ok(), "{report}");
    }

    #[test]
    fn ordering_violation() {
        let spec =
            LatticeSpec::new(vec![Chord::new(2, 1), Chord::new(4, 3)], [], vec![rat(1, 3), rat(2, 7)], rat(7, 5))
                .unwrap();
        let report = validate_spec(&spec);
        assert!(report.violations.iter().any(|v| v.kind == ViolationKind::Ordering));
    }

    #[test]
    fn degenerate_rapidities() {
        let spec =
            LatticeSpec::new(vec![Chord::new(4, 3), Chord::new(2, 1)], [], vec![rat(1, 3), rat(1, 3)], rat(7, 5))
                .unwrap();
        let report = validate_spec(&spec);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].kind, ViolationKind::Genericity);
    }

    #[test]
    fn duplicated_perimeter_point() {
        let spec =
            LatticeSpec::new(vec![Chord::new(4, 2), Chord::new(3, 2)], [], vec![rat(1, 3), rat(2, 7)], rat(7, 5))
                .unwrap();
        let report = validate_spec(&spec);
        assert!(report.violations.iter().any(|v| v.kind == ViolationKind::Perimeter));
    }

    #[test]
    fn q_theta_genericity() {
        let mut spec = single(false, rat(1, 1));
        spec.boundary_q = rat(1, 1);
        let report = validate_spec(&spec);
        assert!(report.violations.iter().all(|v| v.kind == ViolationKind::Genericity));
        assert!(report.violations.len() >= 2);
    }

    #[test]
    fn inhomogeneities_single_line() {
        let v = inhomogeneities(&single(false, rat(1, 3))).unwrap();
        assert_eq!(v.values(), &[rat(-2, 3), rat(1, 3)]);
        let v = inhomogeneities(&single(true, rat(1, 3))).unwrap();
        assert_eq!(v.values(), &[rat(-4, 3), rat(1, 3)]);
    }

    #[test]
    fn inhomogeneities_figure1() {
        let spec = figure1();
        let v = inhomogeneities(&spec).unwrap();
        let th = |k: usize| spec.rapidity(k).clone();
        assert_eq!(v.get(8), &th(1));
        assert_eq!(v.get(3), &(th(1) - 1));
        assert_eq!(v.get(7), &th(2));
        assert_eq!(v.get(1), &(-th(2) - 1));
        assert_eq!(v.get(6), &th(3));
        assert_eq!(v.get(5), &(-th(3) - 1));
        assert_eq!(v.get(4), &th(4));
        assert_eq!(v.get(2), &(-th(4) - 1));
    }

    #[test]
    fn initial_inhomogeneities_match_two_site_layout() {
        let spec = LatticeSpec::initial([2], vec![rat(1, 3), rat(2, 7)], rat(7, 5)).unwrap();
        assert!(spec.is_initial());
        let v = inhomogeneities(&spec).unwrap();
        // line k at sites (2(N-k)+1, 2(N-k+1))
        assert_eq!(v.get(4), &rat(1, 3));
        assert_eq!(v.get(3), &rat(-2, 3));
        assert_eq!(v.get(2), &rat(2, 7));
        assert_eq!(v.get(1), &rat(-9, 7));
    }

    #[test]
    fn canonical_roots() {
        assert_eq!(canonical_bethe_roots(&single(true, rat(1, 3))).unwrap().roots(), &[rat(1, 3)]);
        assert_eq!(canonical_bethe_roots(&single(false, rat(1, 3))).unwrap().roots(), &[rat(-1, 3)]);
        let spec = figure1();
        let th = spec.rapidities().to_vec();
        assert_eq!(
            canonical_bethe_roots(&spec).unwrap().roots(),
            &[-&th[0], th[1].clone(), th[2].clone(), th[3].clone()]
        );
    }

    #[test]
    fn q_function_values() {
        assert!(q_function(&single(true, rat(1, 3)), &rat(1, 3)).is_zero());
        assert_eq!(q_function(&single(false, rat(1, 3)), &Rational::zero()), rat(2, 9));
        let spec = figure1();
        let z = rat(2, 5);
        assert_eq!(q_function(&spec, &z), q_function(&spec, &(-&z - 1)));
    }

    #[test]
    fn magnons() {
        let spec = single(false, rat(1, 3));
        let c = |a: Vec<u8>, b: Vec<u8>| ExternalConfig::new(a, b).unwrap();
        assert_eq!(magnon_positions(&spec, &c(vec![1], vec![1])).unwrap(), vec![1]);
        assert_eq!(magnon_positions(&spec, &c(vec![2], vec![2])).unwrap(), vec![2]);
        let fig = figure1();
        assert_eq!(magnon_positions(&fig, &c(vec![2, 1, 1, 1], vec![1, 1, 2, 2])).unwrap(), vec![1, 3, 8]);
        assert_eq!(magnon_positions(&fig, &ExternalConfig::reference(4)).unwrap(), vec![1, 2, 3, 5]);
    }

    #[test]
    fn ice_rule() {
        let c = |a: Vec<u8>, b: Vec<u8>| ExternalConfig::new(a, b).unwrap();
        assert!(ice_rule_satisfied(&figure1(), &ExternalConfig::reference(4)).unwrap());
        assert!(!ice_rule_satisfied(&single(false, rat(1, 3)), &c(vec![1], vec![2])).unwrap());
        let two = LatticeSpec::initial([], vec![rat(1, 3), rat(2, 7)], rat(7, 5)).unwrap();
        assert!(!ice_rule_satisfied(&two, &c(vec![2, 2], vec![1, 1])).unwrap());
    }

    #[test]
    fn config_enumeration_and_labels() {
        let all: Vec<_> = ExternalConfig::enumerate(2).collect();
        assert_eq!(all.len(), 16);
        assert!(all[0].is_reference());
        assert_eq!(all[15], ExternalConfig::new(vec![2, 2], vec![2, 2]).unwrap());
        assert!(ExternalConfig::new(vec![3], vec![1]).is_err());
        assert!(ExternalConfig::new(vec![1, 1], vec![1]).is_err());
    }

    #[test]
    fn json_schema() {
        let text = r#"{ "n": 1, "lines": [ {"start": 2, "end": 1, "reflected": true, "rapidity": "1/3"} ], "q": "2" }"#;
        let spec = LatticeSpec::from_json(text).unwrap();
        assert_eq!(spec, single(true, rat(1, 3)));
        let back = LatticeSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        let bad = r#"{ "n": 2, "lines": [ {"start": 2, "end": 1, "reflected": true, "rapidity": "1/3"} ], "q": "2" }"#;
        assert!(LatticeSpec::from_json(bad).is_err());
        let config = ExternalConfig::from_json(r#"{"alpha": [2], "beta": [1]}"#).unwrap();
        assert_eq!(config.alpha, vec![2]);
    }

    #[test]
    fn labels_parse() {
        let c = ExternalConfig::from_labels("21", "12").unwrap();
        assert_eq!((c.alpha, c.beta), (vec![2, 1], vec![1, 2]));
        assert!(ExternalConfig::from_labels("23", "11").is_err());
        assert!(ExternalConfig::from_labels("2", "11").is_err());
    }
}
