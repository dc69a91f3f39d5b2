use std::process::ExitCode;
use std::time::{Duration, Instant};

use bpba_core::aba::{bethe_state, check_baxter, check_invariance, unwanted_terms};
use bpba_core::cba::cba_state;
use bpba_core::compute::{Evaluator, Method};
use bpba_core::contraction::{build_invariant, solve_direct_with, Plan};
use bpba_core::lattice::{canonical_bethe_roots, ice_rule_satisfied, q_function};
use bpba_core::sampling::{random_point, random_spec, rng, SpecRng};
use bpba_core::verify::{run_suite, Suite};
use bpba_core::{fixtures, rat, BetheRootSet, ExternalConfig, LatticeSpec, QuantumState, Rational, Result};

const SEED: u64 = 20240517;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn fixture_specs() -> Vec<(&'static str, LatticeSpec)> {
    vec![("figure1", fixtures::figure1()), ("init8", fixtures::init8()), ("bounce", fixtures::bounce())]
}

fn random_specs(r: &mut SpecRng, count: usize) -> Vec<LatticeSpec> {
    (0..count).map(|i| random_spec(r, 1 + i % 4)).collect()
}

/// Draws points until `f` evaluates without hitting a pole.
fn at_generic_point<T>(r: &mut SpecRng, mut f: impl FnMut(&Rational) -> Result<T>) -> Result<(Rational, T)> {
    let mut last = None;
    for _ in 0..50 {
        let z = random_point(r);
        match f(&z) {
            Ok(v) => return Ok((z, v)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Checks every configuration of one spec; returns the number of configs.
fn all_configs_agree(spec: &LatticeSpec) -> std::result::Result<usize, String> {
    let eval = Evaluator::new(spec, &Method::ALL).map_err(|e| format!("{spec}: {e}"))?;
    let mut count = 0;
    for config in ExternalConfig::enumerate(spec.n_lines()) {
        let row = eval.evaluate(&config).map_err(|e| format!("{spec} {config}: {e}"))?;
        if !row.agree() {
            return Err(format!("{spec} {config}: {:?}", row.values));
        }
        let ice = ice_rule_satisfied(spec, &config).map_err(|e| e.to_string())?;
        if !ice && row.values.iter().any(|(_, v)| !v.is_zero()) {
            return Err(format!("{spec} {config}: ice-invalid but nonzero"));
        }
        count += 1;
    }
    Ok(count)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut r = rng(SEED);
    let mut specs = vec![fixtures::figure1()];
    specs.extend(random_specs(&mut r, 52));
    let mut configs = 0;
    for spec in &specs {
        match all_configs_agree(spec) {
            Ok(n) => configs += n,
            Err(e) => return outcome(false, e),
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < Duration::from_secs(60),
        format!("{} specs, {configs} configs, direct = aba = cba, {:.1?}", specs.len(), elapsed),
    )
}

fn criterion_2() -> Outcome {
    let mut r = rng(SEED + 2);
    let mut specs: Vec<LatticeSpec> = fixture_specs().into_iter().map(|(_, s)| s).collect();
    specs.extend(random_specs(&mut r, 20));
    for spec in &specs {
        let eval = match Evaluator::new(spec, &Method::ALL) {
            Ok(e) => e,
            Err(e) => return outcome(false, format!("{spec}: {e}")),
        };
        let row = match eval.evaluate(&ExternalConfig::reference(spec.n_lines())) {
            Ok(row) => row,
            Err(e) => return outcome(false, format!("{spec}: {e}")),
        };
        if row.values.iter().any(|(_, v)| *v != rat(1, 1)) {
            return outcome(false, format!("{spec}: {:?}", row.values));
        }
    }
    outcome(true, format!("Z(reference) = 1 for {} specs x 3 methods", specs.len()))
}

fn route_states(spec: &LatticeSpec) -> Result<Vec<(&'static str, QuantumState)>> {
    Ok(vec![
        ("direct", build_invariant(spec)?),
        ("aba", bethe_state(spec, &canonical_bethe_roots(spec)?)?),
        ("cba", cba_state(spec)?),
    ])
}

fn invariance_on_fixtures(r: &mut SpecRng) -> std::result::Result<usize, String> {
    let mut checks = 0;
    for (name, spec) in fixture_specs() {
        let states = route_states(&spec).map_err(|e| format!("{name}: {e}"))?;
        for _ in 0..3 {
            let z = random_point(r);
            for (route, state) in &states {
                let report = check_invariance(&spec, state, &z).map_err(|e| format!("{name} {route} z={z}: {e}"))?;
                if !report.holds() {
                    return Err(format!("{name} {route} z={z}: {report}"));
                }
                checks += 1;
            }
        }
    }
    Ok(checks)
}

fn criterion_3() -> Outcome {
    match invariance_on_fixtures(&mut rng(SEED + 3)) {
        Ok(n) => outcome(true, format!("{n} (fixture, route, z) invariance checks")),
        Err(e) => outcome(false, e),
    }
}

fn criterion_4() -> Outcome {
    let mut r = rng(SEED + 4);
    for (name, spec) in fixture_specs() {
        for _ in 0..5 {
            match at_generic_point(&mut r, |z| check_baxter(&spec, z)) {
                Ok((_, (true, true))) => {}
                Ok((z, res)) => return outcome(false, format!("{name} z={z}: {res:?}")),
                Err(e) => return outcome(false, format!("{name}: {e}")),
            }
        }
        for _ in 0..10 {
            let z = random_point(&mut r);
            if q_function(&spec, &z) != q_function(&spec, &(-&z - 1)) {
                return outcome(false, format!("{name}: Q not symmetric at z={z}"));
            }
        }
    }
    outcome(true, "both Baxter equations at 5 z and Q(z) = Q(-z-1) at 10 z per fixture")
}

fn criterion_5() -> Outcome {
    let mut r = rng(SEED + 5);
    for (name, spec) in fixture_specs() {
        let roots = match canonical_bethe_roots(&spec) {
            Ok(roots) => roots,
            Err(e) => return outcome(false, format!("{name}: {e}")),
        };
        let mut perturbed = roots.roots().to_vec();
        perturbed[0] += rat(1, 100);
        let perturbed = BetheRootSet::new(perturbed);
        let mut detected = false;
        for _ in 0..3 {
            let n = spec.n_lines();
            let res = at_generic_point(&mut r, |z| {
                (1..=n)
                    .map(|k| Ok((unwanted_terms(&spec, &roots, z, k)?, unwanted_terms(&spec, &perturbed, z, k)?)))
                    .collect::<Result<Vec<_>>>()
            });
            let (z, terms) = match res {
                Ok(v) => v,
                Err(e) => return outcome(false, format!("{name}: {e}")),
            };
            for (k, ((m, nn), (pm, pn))) in terms.iter().enumerate() {
                if !m.is_zero() || !nn.is_zero() {
                    return outcome(false, format!("{name} z={z} k={}: M={m} N={nn}", k + 1));
                }
                detected |= !pm.is_zero() || !pn.is_zero();
            }
        }
        if !detected {
            return outcome(false, format!("{name}: perturbation left every term zero"));
        }
    }
    outcome(true, "M_k = N_k = 0 on shell for all k at 3 z per fixture; nonzero after 1/100 shift")
}

fn suite_outcome(suite: Suite, draws: usize, seed: u64) -> Outcome {
    let report = run_suite(suite, draws, seed);
    let (ok, total) = report.count(suite);
    let first = report.failures().next().map(|f| format!("draw {} {}: {}", f.draw, f.check, f.detail));
    match first {
        Some(f) => outcome(false, format!("{ok}/{total} passed; first failure {f}")),
        None => outcome(total > 0, format!("{ok}/{total} checks over {draws} draws")),
    }
}

fn criterion_6() -> Outcome {
    suite_outcome(Suite::Weights, 100, SEED + 6)
}

fn criterion_7() -> Outcome {
    suite_outcome(Suite::Fcr, 40, SEED + 7)
}

fn criterion_8() -> Outcome {
    suite_outcome(Suite::Reduction, 10, SEED + 8)
}

/// Specs where the two plans give different move sequences, so that the
/// comparison exercises genuinely distinct paths.
fn criterion_9() -> Outcome {
    let mut r = rng(SEED + 9);
    let mut specs = 0;
    let mut drawn = 0;
    while specs < 10 {
        drawn += 1;
        if drawn > 500 {
            return outcome(false, format!("only {specs} specs with distinct plans in 500 draws"));
        }
        let spec = random_spec(&mut r, 3 + drawn % 2);
        let (high, low) = match (solve_direct_with(&spec, Plan::HighestFirst), solve_direct_with(&spec, Plan::LowestFirst)) {
            (Ok(h), Ok(l)) => (h, l),
            (Err(e), _) | (_, Err(e)) => return outcome(false, format!("{spec}: {e}")),
        };
        if high.moves.moves == low.moves.moves {
            continue;
        }
        specs += 1;
        for config in ExternalConfig::enumerate(spec.n_lines()) {
            match (high.partition_function(&config), low.partition_function(&config)) {
                (Ok(a), Ok(b)) if a == b => {}
                (a, b) => return outcome(false, format!("{spec} {config}: {a:?} vs {b:?}")),
            }
        }
    }
    outcome(true, format!("{specs} specs with distinct move sequences ({drawn} drawn), identical Z on all configs"))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let spec = fixtures::figure1();
    let configs = match all_configs_agree(&spec) {
        Ok(n) => n,
        Err(e) => return outcome(false, e),
    };
    if let Err(e) = invariance_on_fixtures(&mut rng(SEED + 10)) {
        return outcome(false, e);
    }
    let elapsed = start.elapsed();
    outcome(elapsed < Duration::from_secs(300), format!("N=4, {configs} configs, 3 methods, invariance: {elapsed:.1?}"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("cross-method equality", criterion_1),
        ("normalization", criterion_2),
        ("invariance of all three states", criterion_3),
        ("Baxter equations and Q symmetry", criterion_4),
        ("unwanted terms", criterion_5),
        ("local identities", criterion_6),
        ("exchange relations", criterion_7),
        ("reduction", criterion_8),
        ("move-plan independence", criterion_9),
        ("performance", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {:>2} {}: {} ({})", i + 1, if o.passed { "PASS" } else { "FAIL" }, name, o.detail);
        failed += usize::from(!o.passed);
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
