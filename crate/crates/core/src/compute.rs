//! Partition functions of one lattice by several methods at once.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::aba::{solve_aba, AbaResult};
use crate::cba::CbaEvaluator;
use crate::contraction::{solve_direct, DirectResult};
use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::lattice::{ExternalConfig, LatticeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Aba,
    Cba,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Direct, Method::Aba, Method::Cba];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Aba => "aba",
            Method::Cba => "cba",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "aba" => Ok(Method::Aba),
            "cba" => Ok(Method::Cba),
            other => Err(Error::InvalidConfig(format!("unknown method {other:?}"))),
        }
    }
}

enum Prepared {
    Direct(DirectResult),
    Aba(AbaResult),
    Cba(CbaEvaluator),
}

impl Prepared {
    fn z(&self, config: &ExternalConfig) -> Result<Rational> {
        match self {
            Prepared::Direct(d) => d.partition_function(config),
            Prepared::Aba(a) => a.partition_function(config),
            Prepared::Cba(c) => c.partition_function(config),
        }
    }
}

/// Per-method state built once, then evaluated on many configurations.
pub struct Evaluator {
    methods: Vec<(Method, Prepared)>,
}

impl Evaluator {
    pub fn new(spec: &LatticeSpec, methods: &[Method]) -> Result<Self> {
        spec.ensure_valid()?;
        let methods = methods
            .iter()
            .map(|&m| {
                let prepared = match m {
                    Method::Direct => Prepared::Direct(solve_direct(spec)?),
                    Method::Aba => Prepared::Aba(solve_aba(spec)?),
                    Method::Cba => Prepared::Cba(CbaEvaluator::new(spec)?),
                };
                Ok((m, prepared))
            })
            .collect::<Result<_>>()?;
        Ok(Evaluator { methods })
    }

    pub fn evaluate(&self, config: &ExternalConfig) -> Result<ConfigResult> {
        let values = self.methods.iter().map(|(m, p)| Ok((*m, p.z(config)?))).collect::<Result<Vec<_>>>()?;
        Ok(ConfigResult { config: config.clone(), values })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigResult {
    pub config: ExternalConfig,
    pub values: Vec<(Method, Rational)>,
}

impl ConfigResult {
    pub fn agree(&self) -> bool {
        self.values.windows(2).all(|w| w[0].1 == w[1].1)
    }

    pub fn value(&self, method: Method) -> Option<&Rational> {
        self.values.iter().find(|(m, _)| *m == method).map(|(_, v)| v)
    }
}

/// Every method on every configuration in `configs`.
pub fn evaluate_all(spec: &LatticeSpec, methods: &[Method], configs: &[ExternalConfig]) -> Result<Vec<ConfigResult>> {
    let eval = Evaluator::new(spec, methods)?;
    configs.iter().map(|c| eval.evaluate(c)).collect()
}
