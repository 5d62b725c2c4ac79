use std::str::FromStr;

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};

/// A parameter sweep: one value, an explicit list, or an inclusive linear range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum Values {
    One(f64),
    List(Vec<f64>),
    Linspace { from: f64, to: f64, count: usize },
}

impl Values {
    pub fn expand(&self) -> Result<Vec<f64>> {
        let v = match self {
            Values::One(x) => vec![*x],
            Values::List(xs) => xs.clone(),
            Values::Linspace { from, to, count } => match count {
                0 => Vec::new(),
                1 => vec![*from],
                c => (0..*c).map(|i| from + (to - from) * i as f64 / (c - 1) as f64).collect(),
            },
        };
        if v.is_empty() {
            bail!("empty parameter range");
        }
        if let Some(x) = v.iter().find(|x| !x.is_finite()) {
            bail!("non-finite parameter value {x}");
        }
        Ok(v)
    }
}

impl FromStr for Values {
    type Err = anyhow::Error;

    /// `x`, `x,y,z` or `from:to:count`.
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| anyhow::anyhow!("bad number {t:?}: {e}"));
        if let Some((a, rest)) = s.split_once(':') {
            let Some((b, c)) = rest.split_once(':') else { bail!("range must be from:to:count, got {s:?}") };
            let count = c.trim().parse::<usize>().map_err(|e| anyhow::anyhow!("bad count {c:?}: {e}"))?;
            return Ok(Values::Linspace { from: num(a)?, to: num(b)?, count });
        }
        if s.contains(',') {
            return Ok(Values::List(s.split(',').map(num).collect::<Result<_>>()?));
        }
        Ok(Values::One(num(s)?))
    }
}
