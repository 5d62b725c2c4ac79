use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use hyperlap_core::geometry::HTypeDescriptor;
use hyperlap_core::verify::VerifyConfig;
use hyperlap_core::QuadratureSpec;
use serde::{Deserialize, Serialize};

use crate::commands::{self, Space, Verdict};
use crate::output::{emit, emit_table, json_bytes, Format};
use crate::values::Values;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Kernel,
    Green,
    Volume,
    Region,
    Verify,
    Maximal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

/// A full invocation described as JSON; fields not used by `command` must be absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandKind,
    pub space: Option<Space>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub t: Option<Values>,
    pub r: Option<Values>,
    pub lambda: Option<Values>,
    pub a: Option<Values>,
    pub h: Option<Values>,
    pub p: Option<f64>,
    /// Verification suite name (or `all`), or the maximal test-function suite.
    pub suite: Option<String>,
    pub descriptor: Option<HTypeDescriptor<f64>>,
    pub verify: Option<VerifyConfig>,
    pub constants: Option<PathBuf>,
    pub quad: Option<QuadratureSpec<f64>>,
    pub output: Option<OutputSpec>,
    /// Overrides the seed of randomized verification scans.
    pub seed: Option<u64>,
}

fn need<T: Clone>(v: &Option<T>, name: &str, cmd: CommandKind) -> Result<T> {
    v.clone().with_context(|| format!("{cmd:?} requires `{name}`").to_lowercase())
}

fn allowed(cmd: CommandKind) -> &'static [&'static str] {
    match cmd {
        CommandKind::Kernel => &["space", "n", "m", "t", "r", "quad", "output"],
        CommandKind::Green => &["space", "n", "lambda", "r", "quad", "output"],
        CommandKind::Volume => &["space", "n", "m", "r", "quad", "output"],
        CommandKind::Region => &["n", "descriptor", "a", "h", "r", "quad", "output"],
        CommandKind::Verify => &["suite", "a", "verify", "constants", "seed", "output"],
        CommandKind::Maximal => &["space", "n", "p", "suite", "constants", "output"],
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&s).with_context(|| format!("invalid run config {}", path.display()))
    }

    fn present(&self) -> [(&'static str, bool); 16] {
        [
            ("space", self.space.is_some()),
            ("n", self.n.is_some()),
            ("m", self.m.is_some()),
            ("t", self.t.is_some()),
            ("r", self.r.is_some()),
            ("lambda", self.lambda.is_some()),
            ("a", self.a.is_some()),
            ("h", self.h.is_some()),
            ("p", self.p.is_some()),
            ("suite", self.suite.is_some()),
            ("descriptor", self.descriptor.is_some()),
            ("verify", self.verify.is_some()),
            ("constants", self.constants.is_some()),
            ("quad", self.quad.is_some()),
            ("output", self.output.is_some()),
            ("seed", self.seed.is_some()),
        ]
    }

    pub fn execute(&self) -> Result<Verdict> {
        let cmd = self.command;
        let ok = allowed(cmd);
        let extra: Vec<&str> = self.present().iter().filter(|(k, p)| *p && !ok.contains(k)).map(|(k, _)| *k).collect();
        if !extra.is_empty() {
            bail!("fields {extra:?} do not apply to command {cmd:?}");
        }
        let quad = self.quad.unwrap_or_default();
        quad.validate()?;
        let path = self.output.as_ref().and_then(|o| o.path.as_deref());
        let format = self.output.as_ref().and_then(|o| o.format);
        let table_format = format.unwrap_or(Format::Csv);
        match cmd {
            CommandKind::Kernel | CommandKind::Green | CommandKind::Volume => {
                let space = need(&self.space, "space", cmd)?;
                let n = need(&self.n, "n", cmd)?;
                let m = self.m.unwrap_or(1);
                let r = need(&self.r, "r", cmd)?.expand()?;
                let table = match cmd {
                    CommandKind::Kernel => {
                        commands::kernel(space, n, m, &need(&self.t, "t", cmd)?.expand()?, &r, &quad)?
                    }
                    CommandKind::Green => {
                        commands::green(space, n, &need(&self.lambda, "lambda", cmd)?.expand()?, &r, &quad)?
                    }
                    _ => commands::volume(space, n, m, &r, &quad)?,
                };
                emit_table(path, table_format, &table)?;
                Ok(Verdict::Pass)
            }
            CommandKind::Region => {
                let d = match (&self.descriptor, self.n) {
                    (Some(d), None) => d.clone(),
                    (None, Some(n)) => HTypeDescriptor::heisenberg(n),
                    _ => bail!("region requires exactly one of `descriptor` or `n` (Heisenberg H(2n, 1))"),
                };
                let table = commands::region(
                    &d,
                    &need(&self.a, "a", cmd)?.expand()?,
                    &need(&self.h, "h", cmd)?.expand()?,
                    &need(&self.r, "r", cmd)?.expand()?,
                    &quad,
                )?;
                emit_table(path, table_format, &table)?;
                Ok(Verdict::Pass)
            }
            CommandKind::Verify => {
                let suites = commands::suites(&need(&self.suite, "suite", cmd)?)?;
                let mut cfg = self.verify.clone().unwrap_or_default();
                if let Some(seed) = self.seed {
                    cfg.cp2b.seed = seed;
                }
                if let Some(a) = &self.a {
                    let a = a.expand()?;
                    if a.len() != 1 {
                        bail!("verify takes a single A");
                    }
                    cfg.prop45.a = a[0];
                    cfg.cp2b.a = a[0];
                }
                cfg.validate()?;
                let constants = commands::load_constants(self.constants.as_deref())?;
                let reports = commands::verify(&suites, &cfg, &constants)?;
                match format.unwrap_or(Format::Json) {
                    Format::Json if reports.len() == 1 => emit(path, &json_bytes(&reports[0])?)?,
                    Format::Json => emit(path, &json_bytes(&reports)?)?,
                    Format::Csv => {
                        let mut bytes = Vec::new();
                        for r in &reports {
                            bytes.extend(commands::margins_table(r).csv_bytes()?);
                        }
                        emit(path, &bytes)?
                    }
                }
                Ok(commands::verdict_of(&reports))
            }
            CommandKind::Maximal => {
                let constants = commands::load_constants(self.constants.as_deref())?;
                let summary = commands::maximal(
                    self.space.unwrap_or(Space::Hn),
                    need(&self.n, "n", cmd)?,
                    need(&self.p, "p", cmd)?,
                    self.suite.as_deref().unwrap_or("default"),
                    &constants,
                )?;
                match format.unwrap_or(Format::Json) {
                    Format::Json => emit(path, &json_bytes(&summary)?)?,
                    Format::Csv => emit(path, &summary.table().csv_bytes()?)?,
                }
                Ok(summary.verdict())
            }
        }
    }
}
