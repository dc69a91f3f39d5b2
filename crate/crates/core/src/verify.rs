//! Randomized identity suites over seeded draws.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::aba::{
    check_b_reflection, check_baxter, check_fcr_open, check_invariance, check_reduction, solve_aba, unwanted_terms,
    unwanted_terms_from_coefficients,
};
use crate::cba::{cba_state, check_b_expansion, check_closed_fcr, check_closed_wave, check_vecmitb, two_reflection_sum};
use crate::contraction::{build_invariant, check_bybevec, check_line_eigen};
use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::lattice::{canonical_bethe_roots, q_function, BetheRootSet, Chord, LatticeSpec};
use crate::monodromy::{check_crossing, check_ubybe, lambda, xi};
use crate::sampling::{random_point, random_rational, random_spec, rng, SpecRng};
use crate::weights;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Weights,
    Fcr,
    Baxter,
    Invariance,
    Reduction,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 5] = [Suite::Weights, Suite::Fcr, Suite::Baxter, Suite::Invariance, Suite::Reduction];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Weights => "weights",
            Suite::Fcr => "fcr",
            Suite::Baxter => "baxter",
            Suite::Invariance => "invariance",
            Suite::Reduction => "reduction",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weights" => Ok(Suite::Weights),
            "fcr" => Ok(Suite::Fcr),
            "baxter" => Ok(Suite::Baxter),
            "invariance" => Ok(Suite::Invariance),
            "reduction" => Ok(Suite::Reduction),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidConfig(format!("unknown suite {other:?}"))),
        }
    }
}

/// One named identity evaluated on one draw.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub draw: usize,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub draws: usize,
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    pub fn count(&self, suite: Suite) -> (usize, usize) {
        let of_suite: Vec<_> = self.outcomes.iter().filter(|o| o.suite == suite).collect();
        (of_suite.iter().filter(|o| o.passed).count(), of_suite.len())
    }
}

type Checks = Vec<(String, bool, String)>;

/// The parameters of a draw and the checks evaluated on them.
type Drawn = (String, Checks);

fn pass(name: &str, ok: bool) -> (String, bool, String) {
    (name.to_string(), ok, String::new())
}

/// Draws parameters until none of them hits a pole, then runs the checks.
fn with_resample(rng: &mut SpecRng, index: usize, draw: fn(&mut SpecRng, usize) -> Result<Drawn>) -> Checks {
    const ATTEMPTS: usize = 50;
    let mut last = String::new();
    for _ in 0..ATTEMPTS {
        match draw(rng, index) {
            Ok((params, checks)) => {
                return checks
                    .into_iter()
                    .map(|(name, ok, detail)| {
                        let detail = if detail.is_empty() { params.clone() } else { format!("{params}; {detail}") };
                        (name, ok, detail)
                    })
                    .collect()
            }
            Err(e @ (Error::Pole(_) | Error::Degenerate(_) | Error::DivisionByZero)) => last = e.to_string(),
            Err(e) => return vec![("draw".into(), false, e.to_string())],
        }
    }
    vec![("draw".into(), false, format!("no pole-free parameters after {ATTEMPTS} attempts: {last}"))]
}

fn weights_draw(rng: &mut SpecRng, index: usize) -> Result<Drawn> {
    let [t1, t2, t3, q, z] = std::array::from_fn(|_| random_point(rng));
    let bootstrap = weights::check_bootstrap(&z);
    let eigen = check_line_eigen(&t1, &z);
    let spec = random_spec(rng, 1 + index % 2);
    let params = format!("theta=({t1}, {t2}, {t3}) q={q} z={z} lattice: {spec}");
    Ok((params, vec![
        pass("crossing", check_crossing(&spec, &z)?),
        pass("b_reflection", check_b_reflection(&spec, &z)?),
        pass("ybe", weights::check_ybe_all_signs(&t1, &t2, &t3)?),
        pass("bybe", weights::check_bybe(&t1, &t2, &q)?),
        pass("unitarity", weights::check_unitarity(&z)),
        pass("transpose", weights::check_transpose(&z)),
        pass("bootstrap", bootstrap.0 && bootstrap.1),
        pass("similarity", weights::check_similarity(&z)),
        pass("special_points", weights::check_special_points()),
        pass("line_eigen", eigen.0 && eigen.1),
        pass("boundary_line_vector", check_bybevec(&t1, &q, &z)?),
    ]))
}

fn fcr_draw(rng: &mut SpecRng, index: usize) -> Result<Drawn> {
    let n = 1 + index % 2;
    let spec = random_spec(rng, n);
    let [x, y, z] = std::array::from_fn(|_| random_point(rng));
    let roots: Vec<Rational> = (0..2).map(|_| random_point(rng)).collect();
    let params = format!("x={x} y={y} z={z} roots=({}, {}) lattice: {spec}", roots[0], roots[1]);
    let mut checks = vec![
        pass("open_fcr", check_fcr_open(&spec, &x, &y)?),
        pass("closed_fcr", check_closed_fcr(&spec, &x, &y)?),
        pass("b_expansion", check_b_expansion(&spec, &z)?),
        pass("two_reflection_sum", two_reflection_sum(spec.boundary_q(), &x, &y)?.is_zero()),
    ];
    if n == 2 {
        checks.push(pass("vecmitb_m1", check_vecmitb(&spec, &roots[..1])?));
        checks.push(pass("vecmitb_m2", check_vecmitb(&spec, &roots)?));
        checks.push(pass("closed_wave", check_closed_wave(&spec, &roots)?));
    } else {
        checks.push(pass("boundary_ybe", check_ubybe(&spec, &x, &y)?));
    }
    Ok((params, checks))
}

fn baxter_draw(rng: &mut SpecRng, index: usize) -> Result<Drawn> {
    let n = 1 + index % 4;
    let spec = random_spec(rng, n);
    let z = random_point(rng);
    let (first, second) = check_baxter(&spec, &z)?;
    let shift = lambda(&spec, &(&z + 1)) * lambda(&spec, &z) == xi(&spec, &(&z + 1)) * xi(&spec, &(&z - 1));
    let q_sym = q_function(&spec, &z) == q_function(&spec, &(-&z - 1));
    let roots = canonical_bethe_roots(&spec)?;
    let k = rng.gen_range(1..=n);
    let on_shell = unwanted_terms(&spec, &roots, &z, k)?;
    let mut off = roots.roots().to_vec();
    off[k - 1] += Rational::new(1, 100)?;
    let off = BetheRootSet::new(off);
    let off_shell = unwanted_terms(&spec, &off, &z, k)?;
    let forms_agree = off_shell == unwanted_terms_from_coefficients(&spec, &off, &z, k)?;
    let params = format!("z={z} k={k} lattice: {spec}");
    Ok((params, vec![
        pass("baxter_first", first),
        pass("baxter_second", second),
        pass("lambda_xi_shift", shift),
        pass("q_symmetry", q_sym),
        pass("unwanted_on_shell", on_shell.0.is_zero() && on_shell.1.is_zero()),
        pass("unwanted_off_shell", !off_shell.0.is_zero() || !off_shell.1.is_zero()),
        pass("unwanted_forms_agree", forms_agree),
    ]))
}

/// The first three draws use the bundled fixtures.
fn invariance_draw(rng: &mut SpecRng, index: usize) -> Result<Drawn> {
    let spec = match index {
        0 => crate::fixtures::figure1(),
        1 => crate::fixtures::init8(),
        2 => crate::fixtures::bounce(),
        _ => random_spec(rng, 1 + index % 4),
    };
    let aba = solve_aba(&spec)?.bethe_state;
    let direct = build_invariant(&spec)?;
    let cba = cba_state(&spec)?;
    let mut checks = Vec::new();
    let mut params = format!("lattice: {spec} z=");
    for i in 0..3 {
        let z = random_point(rng);
        params.push_str(&format!("{z} "));
        let a = check_invariance(&spec, &aba, &z)?;
        let d = check_invariance(&spec, &direct, &z)?;
        checks.push((format!("aba_invariance_{i}"), a.holds(), a.to_string()));
        checks.push((format!("direct_invariance_{i}"), d.holds(), d.to_string()));
        let c = check_invariance(&spec, &cba, &z)?;
        checks.push((format!("cba_invariance_{i}"), c.holds(), c.to_string()));
    }
    checks.push(pass("proportional", aba.proportionality(&direct).is_some() && aba.proportionality(&cba).is_some()));
    Ok((params, checks))
}

fn reduction_draw(rng: &mut SpecRng, index: usize) -> Result<Drawn> {
    let reflected: Vec<usize> = if index.is_multiple_of(2) { vec![1] } else { vec![] };
    let inner = random_spec(rng, 1);
    let theta = random_rational(rng);
    let spec = LatticeSpec::new(
        vec![Chord::new(4, 3), Chord::new(2, 1)],
        reflected.iter().copied().chain(inner.is_reflected(1).then_some(2)),
        vec![theta, inner.rapidity(1).clone()],
        inner.boundary_q().clone(),
    )?;
    if !crate::lattice::validate_spec(&spec).ok() {
        return Err(Error::Degenerate("non-generic draw".into()));
    }
    let on_shell = check_reduction(&spec, &[spec.signed_rapidity(2)])?;
    let off_root = random_point(rng);
    let off_shell = check_reduction(&spec, std::slice::from_ref(&off_root))?;
    let params = format!("off-shell root={off_root} lattice: {spec}");
    Ok((params, vec![
        (format!("on_shell_{}", if reflected.is_empty() { "line" } else { "bounce" }), on_shell.holds(), format!("{on_shell:?}")),
        (format!("off_shell_{}", if reflected.is_empty() { "line" } else { "bounce" }), off_shell.holds(), format!("{off_shell:?}")),
    ]))
}

fn suite_draw(suite: Suite) -> fn(&mut SpecRng, usize) -> Result<Drawn> {
    match suite {
        Suite::Weights => weights_draw,
        Suite::Fcr => fcr_draw,
        Suite::Baxter => baxter_draw,
        Suite::Invariance => invariance_draw,
        Suite::Reduction | Suite::All => reduction_draw,
    }
}

/// Runs `draws` draws of one suite (or of every suite for [`Suite::All`]).
pub fn run_suite(suite: Suite, draws: usize, seed: u64) -> VerifyReport {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::CONCRETE.to_vec() } else { vec![suite] };
    let mut report = VerifyReport { seed, draws, outcomes: Vec::new() };
    for s in suites {
        report.outcomes.extend(run_single(s, draws, seed));
    }
    report
}

/// One suite with its own stream derived from `seed`, so suites are
/// reproducible independently of each other.
pub fn run_single(suite: Suite, draws: usize, seed: u64) -> Vec<CheckOutcome> {
    let offset = Suite::CONCRETE.iter().position(|&s| s == suite).unwrap_or(0) as u64;
    let mut r = rng(seed.wrapping_mul(31).wrapping_add(offset));
    let draw_fn = suite_draw(suite);
    let mut out = Vec::new();
    for draw in 0..draws {
        for (check, passed, detail) in with_resample(&mut r, draw, draw_fn) {
            out.push(CheckOutcome { suite, draw, check, passed, detail });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_a_few_draws() {
        for suite in Suite::CONCRETE {
            let report = run_suite(suite, 3, 11);
            let fails: Vec<_> = report.failures().collect();
            assert!(fails.is_empty(), "{suite}: {fails:?}");
            assert!(report.count(suite).1 > 0);
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::CONCRETE.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
