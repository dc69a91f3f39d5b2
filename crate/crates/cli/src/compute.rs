use std::collections::BTreeMap;
use std::time::Instant;

use bpba_core::aba::{check_invariance, solve_aba};
use bpba_core::cba::cba_state;
use bpba_core::compute::{Evaluator, Method};
use bpba_core::contraction::build_invariant;
use bpba_core::lattice::ice_rule_satisfied;
use bpba_core::sampling::{random_point, rng};
use bpba_core::verify::{CheckOutcome, Suite};
use bpba_core::{ExternalConfig, LatticeSpec, QuantumState, Rational};
use rayon::prelude::*;

use crate::report::{ConfigRow, RunReport};
use crate::spec_digest;

fn labels(l: &[u8]) -> String {
    l.iter().map(|s| char::from(b'0' + s)).collect()
}

fn method_values(spec: &LatticeSpec, method: Method, configs: &[ExternalConfig]) -> bpba_core::Result<(Vec<Rational>, f64)> {
    let start = Instant::now();
    let eval = Evaluator::new(spec, &[method])?;
    let values = configs
        .par_iter()
        .map(|c| Ok(eval.evaluate(c)?.values.swap_remove(0).1))
        .collect::<bpba_core::Result<Vec<_>>>()?;
    Ok((values, start.elapsed().as_secs_f64() * 1e3))
}

fn method_state(spec: &LatticeSpec, method: Method) -> bpba_core::Result<QuantumState> {
    match method {
        Method::Direct => build_invariant(spec),
        Method::Aba => Ok(solve_aba(spec)?.bethe_state),
        Method::Cba => cba_state(spec),
    }
}

/// Invariance of each method's state at `points` random `z`.
pub fn invariance_checks(spec: &LatticeSpec, methods: &[Method], points: usize, seed: u64) -> bpba_core::Result<Vec<CheckOutcome>> {
    let mut r = rng(seed);
    let zs: Vec<Rational> = (0..points).map(|_| random_point(&mut r)).collect();
    let mut out = Vec::new();
    for &m in methods {
        let state = method_state(spec, m)?;
        for (draw, z) in zs.iter().enumerate() {
            let report = check_invariance(spec, &state, z)?;
            out.push(CheckOutcome {
                suite: Suite::Invariance,
                draw,
                check: format!("{m}_invariance"),
                passed: report.holds(),
                detail: format!("z={z}: {report}"),
            });
        }
    }
    Ok(out)
}

pub fn run(spec: &LatticeSpec, methods: &[Method], configs: &[ExternalConfig]) -> bpba_core::Result<RunReport> {
    spec.ensure_valid()?;
    let mut per_method = Vec::new();
    let mut timings_ms = BTreeMap::new();
    for &m in methods {
        let (values, ms) = method_values(spec, m, configs)?;
        timings_ms.insert(m.name().to_string(), ms);
        per_method.push((m, values));
    }
    let results = configs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(ConfigRow {
                alpha: labels(&c.alpha),
                beta: labels(&c.beta),
                ice_valid: ice_rule_satisfied(spec, c)?,
                values: per_method.iter().map(|(m, v)| (m.name().to_string(), v[i].clone())).collect(),
            })
        })
        .collect::<bpba_core::Result<Vec<_>>>()?;
    let agreement = results.iter().all(ConfigRow::agree);
    Ok(RunReport {
        spec_digest: spec_digest(spec),
        spec: spec.to_string(),
        methods: methods.iter().map(|m| m.name().to_string()).collect(),
        results,
        agreement,
        timings_ms,
        identities: Vec::new(),
    })
}
