use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use hyperlap_core::fixtures::Constants;
use hyperlap_core::geometry::{an_volume, hn_volume, region_volume, vc_volume, HTypeDescriptor};
use hyperlap_core::green::{green_hc, green_hn};
use hyperlap_core::kernels::{an_heat, hc_heat, hn_heat};
use hyperlap_core::maximal::{default_suite, HalfSpaceGrid, NamedTestFunction, OpnormProbe};
use hyperlap_core::parallel::pool;
use hyperlap_core::verify::{run_suite, Suite, VerificationReport, VerifyConfig};
use hyperlap_core::QuadratureSpec;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::output::{emit, json_bytes, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Hn,
    Hc,
    An,
}

/// Whether every checked margin held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

type Quad = QuadratureSpec<f64>;

fn grid2(a: &[f64], b: &[f64]) -> Vec<(f64, f64)> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect()
}

fn scan<F>(header: &[&str], pts: &[(f64, f64)], f: F) -> Result<Table>
where
    F: Fn(f64, f64) -> hyperlap_core::Result<f64> + Sync,
{
    let vals: Vec<Result<f64>> = pool().install(|| {
        pts.par_iter()
            .map(|&(x, y)| f(x, y).with_context(|| format!("at {} = {x}, {} = {y}", header[0], header[1])))
            .collect()
    });
    let mut t = Table::new(header);
    for (&(x, y), v) in pts.iter().zip(vals) {
        t.push_numbers(&[x, y, v?]);
    }
    Ok(t)
}

/// Heat kernel rows `t,r,value`. For `an`, `n` is the horizontal dimension 2n of the H-type
/// group and `m` its center dimension.
pub fn kernel(space: Space, n: usize, m: usize, t: &[f64], r: &[f64], quad: &Quad) -> Result<Table> {
    quad.validate()?;
    let pts = grid2(t, r);
    match space {
        Space::Hn => scan(&["t", "r", "value"], &pts, |t, r| hn_heat(n, t, r, quad)),
        Space::Hc => scan(&["t", "r", "value"], &pts, |t, r| hc_heat(n, t, r, quad)),
        Space::An => scan(&["t", "r", "value"], &pts, |t, r| an_heat(n, m, t, r, quad)),
    }
}

/// Green function rows `lambda,r,value`.
pub fn green(space: Space, n: usize, lambda: &[f64], r: &[f64], quad: &Quad) -> Result<Table> {
    quad.validate()?;
    let pts = grid2(lambda, r);
    match space {
        Space::Hn => scan(&["lambda", "r", "value"], &pts, |l, r| green_hn(n, l, r, quad)),
        Space::Hc => scan(&["lambda", "r", "value"], &pts, |l, r| green_hc(n, l, r, quad)),
        Space::An => bail!("green functions are available for hn and hc only"),
    }
}

/// Ball volume rows `n,r,value`.
pub fn volume(space: Space, n: usize, m: usize, r: &[f64], quad: &Quad) -> Result<Table> {
    quad.validate()?;
    let pts: Vec<(f64, f64)> = r.iter().map(|&r| (n as f64, r)).collect();
    match space {
        Space::Hn => scan(&["n", "r", "value"], &pts, |_, r| hn_volume(n, r, quad)),
        Space::Hc => scan(&["n", "r", "value"], &pts, |_, r| vc_volume(n, r)),
        Space::An => scan(&["n", "r", "value"], &pts, |_, r| an_volume(n, m, r, quad)),
    }
}

/// Region volume rows `a,h,r,value` for a descriptor with one-dimensional center.
pub fn region(d: &HTypeDescriptor<f64>, a: &[f64], h: &[f64], r: &[f64], quad: &Quad) -> Result<Table> {
    quad.validate()?;
    d.validate()?;
    let pts: Vec<(f64, f64, f64)> =
        a.iter().flat_map(|&a| h.iter().flat_map(move |&h| r.iter().map(move |&r| (a, h, r)))).collect();
    let vals: Vec<Result<f64>> = pool().install(|| {
        pts.par_iter()
            .map(|&(a, h, r)| region_volume(d, a, h, r, quad).with_context(|| format!("at a = {a}, h = {h}, r = {r}")))
            .collect()
    });
    let mut t = Table::new(&["a", "h", "r", "value"]);
    for (&(a, h, r), v) in pts.iter().zip(vals) {
        t.push_numbers(&[a, h, r, v?]);
    }
    Ok(t)
}

pub fn load_descriptor(path: &Path) -> Result<HTypeDescriptor<f64>> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let d: HTypeDescriptor<f64> =
        serde_json::from_str(&s).with_context(|| format!("parsing descriptor {}", path.display()))?;
    d.validate()?;
    Ok(d)
}

pub fn load_verify_config(path: Option<&Path>) -> Result<VerifyConfig> {
    match path {
        None => Ok(VerifyConfig::default()),
        Some(p) => {
            let s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            VerifyConfig::from_json(&s).with_context(|| format!("invalid verify config {}", p.display()))
        }
    }
}

pub fn load_constants(path: Option<&Path>) -> Result<Constants> {
    match path {
        None => Ok(Constants::embedded()),
        Some(p) => {
            let s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(Constants::from_json(&s)?)
        }
    }
}

pub fn suites(name: &str) -> Result<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::from_name(name).map(|s| vec![s]).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        anyhow!("unknown suite {name:?}; expected one of {} or all", names.join(", "))
    })
}

pub fn list_suites() -> Table {
    let mut t = Table::new(&["suite", "anchor"]);
    for s in Suite::ALL {
        t.rows.push(vec![s.name().to_string(), s.anchor().to_string()]);
    }
    t
}

pub fn verify(suites: &[Suite], cfg: &VerifyConfig, constants: &Constants) -> Result<Vec<VerificationReport>> {
    suites.iter().map(|&s| run_suite(s, cfg, constants).with_context(|| format!("suite {}", s.name()))).collect()
}

pub fn verdict_of(reports: &[VerificationReport]) -> Verdict {
    if reports.iter().all(|r| r.pass) {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

pub fn margins_table(report: &VerificationReport) -> Table {
    let (header, rows) = report.csv_table();
    Table { header, rows }
}

/// Writes `<dir>/<suite>.json` and `<dir>/<suite>.csv` for each report.
pub fn write_reports(dir: &Path, reports: &[VerificationReport]) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for r in reports {
        emit(Some(&dir.join(format!("{}.json", r.lemma))), &json_bytes(r)?)?;
        emit(Some(&dir.join(format!("{}.csv", r.lemma))), &margins_table(r).csv_bytes()?)?;
    }
    Ok(())
}

/// Either the name `default` or a path to a JSON array of named test functions.
pub fn load_suite(spec: &str) -> Result<Vec<NamedTestFunction<f64>>> {
    if spec == "default" {
        return Ok(default_suite());
    }
    let p = PathBuf::from(spec);
    let s = std::fs::read_to_string(&p)
        .with_context(|| format!("suite {spec:?} is neither `default` nor a readable file"))?;
    let suite: Vec<NamedTestFunction<f64>> =
        serde_json::from_str(&s).with_context(|| format!("parsing test-function suite {}", p.display()))?;
    if suite.is_empty() {
        bail!("test-function suite {} is empty", p.display());
    }
    Ok(suite)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedRatio {
    pub name: String,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximalSummary {
    pub space: Space,
    pub n: usize,
    pub p: f64,
    pub suite: String,
    pub grid: serde_json::Value,
    pub r_min: f64,
    pub r_max: f64,
    pub r_count: usize,
    pub ratios: Vec<NamedRatio>,
    pub max_ratio: f64,
    pub budget: Option<f64>,
    pub within_budget: Option<bool>,
    pub boundary_touch: bool,
    pub notes: Vec<String>,
}

impl MaximalSummary {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["name", "ratio"]);
        for r in &self.ratios {
            t.rows.push(vec![r.name.clone(), r.ratio.to_string()]);
        }
        t
    }

    pub fn verdict(&self) -> Verdict {
        if self.within_budget == Some(false) || !self.max_ratio.is_finite() {
            Verdict::Fail
        } else {
            Verdict::Pass
        }
    }
}

/// ‖Mf‖_p/‖f‖_p for each function of the suite on the default grid for H^n. The recorded
/// budget applies to the default suite only.
pub fn maximal(space: Space, n: usize, p: f64, suite_spec: &str, constants: &Constants) -> Result<MaximalSummary> {
    if space != Space::Hn {
        bail!("the discrete maximal operator is implemented on hn grids only");
    }
    if p.is_nan() || p < 1.0 {
        bail!("p must be at least 1, got {p}");
    }
    let suite = load_suite(suite_spec)?;
    let grid = HalfSpaceGrid::<f64>::default_for(n)?;
    let r_grid = grid.default_r_grid();
    let grid_desc = serde_json::json!({
        "log_y_half_width": grid.log_y_half_width,
        "ny": grid.ny,
        "x_half_width": grid.x_half_width,
        "nx": grid.nx,
    });
    let probe = OpnormProbe::new(grid, &suite, &r_grid)?;
    let ratios = probe.ratios(p)?;
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    let budget = (suite_spec == "default").then(|| constants.budget(n, p).map(|b| b.budget)).flatten();
    let mut notes = vec![
        "norms are taken over the finite grid; f ≡ 1 has ratio 1 by construction".to_string(),
        "only n = 2, 3 are probed; this does not establish dimension-free bounds".to_string(),
    ];
    if probe.boundary_touch {
        notes.push("the largest ball about the center leaves the grid; averages use in-grid cells only".into());
    }
    if budget.is_none() {
        notes.push("no recorded budget for this (n, p, suite)".into());
    }
    Ok(MaximalSummary {
        space,
        n,
        p,
        suite: suite_spec.to_string(),
        grid: grid_desc,
        r_min: r_grid[0],
        r_max: *r_grid.last().unwrap(),
        r_count: r_grid.len(),
        ratios: probe
            .names
            .iter()
            .zip(&ratios)
            .map(|(name, &ratio)| NamedRatio { name: name.clone(), ratio })
            .collect(),
        max_ratio,
        budget,
        within_budget: budget.map(|b| max_ratio <= b),
        boundary_touch: probe.boundary_touch,
        notes,
    })
}
