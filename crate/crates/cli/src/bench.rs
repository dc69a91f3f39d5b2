use std::fmt;
use std::time::Instant;

use bpba_core::compute::{Evaluator, Method};
use bpba_core::sampling::{random_spec, rng};
use bpba_core::ExternalConfig;
use serde::Serialize;

pub const MAX_LINES: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub dimension: usize,
    pub cba_terms: u64,
    /// Preparation plus two evaluations, per method.
    pub millis: Vec<(String, f64)>,
    pub agreement: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchTable {
    pub seed: u64,
    pub rows: Vec<BenchRow>,
}

impl fmt::Display for BenchTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>2} {:>6} {:>9}", "N", "dim", "cba terms")?;
        for m in Method::ALL {
            write!(f, " {:>12}", format!("{m} ms"))?;
        }
        write!(f, " agree")?;
        for row in &self.rows {
            write!(f, "\n{:>2} {:>6} {:>9}", row.n, row.dimension, row.cba_terms)?;
            for (_, ms) in &row.millis {
                write!(f, " {ms:>12.1}")?;
            }
            write!(f, " {}", row.agreement)?;
        }
        Ok(())
    }
}

/// `2^n n!`, the number of terms in the coordinate wave function.
pub fn cba_terms(n: usize) -> u64 {
    (1..=n as u64).product::<u64>() << n
}

/// Times every method on a random spec for each `N ≤ nmax`, evaluating the
/// reference configuration and the one with all incoming labels flipped.
pub fn run(nmax: usize, seed: u64) -> anyhow::Result<BenchTable> {
    if nmax == 0 || nmax > MAX_LINES {
        anyhow::bail!("--nmax must be in 1..={MAX_LINES} (got {nmax}); the chain dimension is 4^N");
    }
    let mut rows = Vec::new();
    for n in 1..=nmax {
        let spec = random_spec(&mut rng(seed.wrapping_add(n as u64)), n);
        let configs = [ExternalConfig::reference(n), ExternalConfig::new(vec![2; n], vec![1; n])?];
        let mut millis = Vec::new();
        let mut values = Vec::new();
        for m in Method::ALL {
            let start = Instant::now();
            let eval = Evaluator::new(&spec, &[m])?;
            let z: Vec<_> = configs.iter().map(|c| eval.evaluate(c).map(|r| r.values[0].1.clone())).collect::<Result<_, _>>()?;
            millis.push((m.name().to_string(), start.elapsed().as_secs_f64() * 1e3));
            values.push(z);
        }
        let agreement = values.windows(2).all(|w| w[0] == w[1]);
        rows.push(BenchRow { n, dimension: 1 << (2 * n), cba_terms: cba_terms(n), millis, agreement });
    }
    Ok(BenchTable { seed, rows })
}
