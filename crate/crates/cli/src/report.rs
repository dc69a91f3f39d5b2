use std::collections::BTreeMap;
use std::fmt;

use bpba_core::verify::CheckOutcome;
use bpba_core::Rational;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigRow {
    pub alpha: String,
    pub beta: String,
    pub ice_valid: bool,
    /// Exact `Z` keyed by method name.
    pub values: BTreeMap<String, Rational>,
}

impl ConfigRow {
    pub fn agree(&self) -> bool {
        let mut it = self.values.values();
        match it.next() {
            Some(first) => it.all(|v| v == first),
            None => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub spec_digest: String,
    pub spec: String,
    pub methods: Vec<String>,
    pub results: Vec<ConfigRow>,
    /// True iff all computed methods coincide on every requested config.
    pub agreement: bool,
    /// Preparation plus evaluation time per method.
    pub timings_ms: BTreeMap<String, f64>,
    pub identities: Vec<CheckOutcome>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.agreement && self.identities.iter().all(|o| o.passed)
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "spec {}", self.spec)?;
        writeln!(f, "digest {}", self.spec_digest)?;
        for row in &self.results {
            write!(f, "alpha={} beta={}", row.alpha, row.beta)?;
            for (m, v) in &row.values {
                write!(f, "  {m}={v}")?;
            }
            if !row.agree() {
                write!(f, "  DISAGREE")?;
            }
            writeln!(f)?;
        }
        for o in &self.identities {
            writeln!(f, "{} {} {}: {}", if o.passed { "ok" } else { "FAIL" }, o.check, o.draw, o.detail)?;
        }
        let timings: Vec<String> = self.timings_ms.iter().map(|(m, t)| format!("{m} {t:.1} ms")).collect();
        writeln!(f, "timings: {}", timings.join(", "))?;
        write!(f, "agreement: {}", self.agreement)
    }
}
