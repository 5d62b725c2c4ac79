//! Measured constants shipped with the crate. Verification suites recompute them and fail
//! when a rerun drifts by more than [`REPRODUCE_REL_TOL`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const REPRODUCE_REL_TOL: f64 = 0.01;

const EMBEDDED: &str = include_str!("../fixtures/constants.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MicroLocalConstant {
    pub a: f64,
    pub dims: Vec<usize>,
    pub c_a: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionConstant {
    pub a: f64,
    pub dims: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub c_a: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpnormBudget {
    pub n: usize,
    pub p: f64,
    pub measured: f64,
    pub budget: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    pub c_o: f64,
    pub c_fit: f64,
    pub c_star: f64,
    pub prop45: MicroLocalConstant,
    pub cp2b: RegionConstant,
    pub opnorm_budgets: Vec<OpnormBudget>,
}

impl Constants {
    pub fn embedded() -> Self {
        serde_json::from_str(EMBEDDED).expect("embedded constants fixture parses")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("constants fixture: {e}")))
    }

    pub fn budget(&self, n: usize, p: f64) -> Option<&OpnormBudget> {
        self.opnorm_budgets.iter().find(|b| b.n == n && (b.p - p).abs() < 1e-12)
    }
}

/// |measured − recorded| ≤ 1% of the recorded value.
pub fn reproduces(measured: f64, recorded: f64) -> bool {
    (measured - recorded).abs() <= REPRODUCE_REL_TOL * recorded.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixture_parses() {
        let c = Constants::embedded();
        assert!(c.c_o > 0.0 && c.c_star >= 1.0 && c.prop45.c_a >= 1.0);
        assert!(Constants::from_json("{}").is_err());
        assert!(reproduces(1.005, 1.0) && !reproduces(1.02, 1.0));
    }
}
