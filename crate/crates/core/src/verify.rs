//! Verification suites: each scans a parameter grid, records a signed margin per point
//! (nonnegative means the inequality holds there) and summarizes the worst one.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::{reproduces, Constants, REPRODUCE_REL_TOL};
use crate::green::{hc_rho_sq, hn_rho_sq, ln_green_hc, ln_green_hn, ln_green_lower_bound_hc, ln_green_lower_bound_hn};
use crate::inequalities::{
    calibrate_c_a, calibrate_c_o_with, calibrate_c_star, cp2b_ratio, cp2b_samples, eps_floor, eps_floor_complex,
    n_p_complex, n_p_complex_displayed, n_p_with_binding, phi, prop43_sides, prop53_sides, radial_suite, round_up_sig4,
};
use crate::parallel::pool;
use crate::quadrature::QuadratureSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginPoint {
    pub label: String,
    pub params: BTreeMap<String, f64>,
    pub margin: f64,
    pub pass: bool,
}

impl MarginPoint {
    fn new(label: impl Into<String>, params: &[(&str, f64)], margin: f64) -> Self {
        Self {
            label: label.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            margin,
            pass: margin >= 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub lemma: String,
    pub anchor: String,
    pub grid: serde_json::Value,
    pub worst_margin: f64,
    pub pass: bool,
    pub constants: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub points: Vec<MarginPoint>,
}

impl VerificationReport {
    fn assemble(suite: Suite, grid: serde_json::Value, points: Vec<MarginPoint>) -> Self {
        let worst_margin =
            points.iter().map(|p| p.margin).fold(f64::INFINITY, |a, b| if b.is_nan() { b } else { a.min(b) });
        let pass = !points.is_empty() && points.iter().all(|p| p.pass);
        Self {
            lemma: suite.name().to_string(),
            anchor: suite.anchor().to_string(),
            grid,
            worst_margin,
            pass,
            constants: BTreeMap::new(),
            notes: Vec::new(),
            points,
        }
    }

    /// Header and rows for a CSV of per-point margins; parameter columns are the union of
    /// all parameter names, sorted.
    pub fn csv_table(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let mut keys: Vec<String> = self.points.iter().flat_map(|p| p.params.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let mut header = vec!["label".to_string()];
        header.extend(keys.iter().cloned());
        header.push("margin".into());
        header.push("pass".into());
        let rows = self
            .points
            .iter()
            .map(|p| {
                let mut row = vec![p.label.clone()];
                row.extend(keys.iter().map(|k| p.params.get(k).map(|v| v.to_string()).unwrap_or_default()));
                row.push(p.margin.to_string());
                row.push(p.pass.to_string());
                row
            })
            .collect();
        (header, rows)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemma31,
    Phi,
    Lemma42,
    Lemma52,
    Prop43,
    Prop45,
    Prop53,
    Cp2b,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Lemma31,
        Suite::Phi,
        Suite::Lemma42,
        Suite::Lemma52,
        Suite::Prop43,
        Suite::Prop45,
        Suite::Prop53,
        Suite::Cp2b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma31 => "lemma31",
            Suite::Phi => "phi",
            Suite::Lemma42 => "lemma42",
            Suite::Lemma52 => "lemma52",
            Suite::Prop43 => "prop43",
            Suite::Prop45 => "prop45",
            Suite::Prop53 => "prop53",
            Suite::Cp2b => "cp2b",
        }
    }

    pub fn anchor(self) -> &'static str {
        match self {
            Suite::Lemma31 => "critical point of F_beta and the beta^4 bound on its supremum",
            Suite::Phi => "Phi(s) = ln cosh(s)/s^2: limit 1/2 at 0 and strict decrease",
            Suite::Lemma42 => "explicit lower bound for the shifted resolvent kernel on H^n",
            Suite::Lemma52 => "explicit lower bound for the shifted resolvent kernel on H_c^n",
            Suite::Prop43 => "part at infinity S_eps dominated by 8 C_* n(n-2) times the shifted resolvent on H^n",
            Suite::Prop45 => {
                "micro-local ball averages dominated by c(A) times the Sturm-Liouville semigroup of M_euclid"
            }
            Suite::Prop53 => "part at infinity S_eps dominated by 100 * 2n(2n-2) times the shifted resolvent on H_c^n",
            Suite::Cp2b => "Gaussian-shape bound on the Heisenberg region volume near the diagonal",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Lemma31Config {
    pub depth: u32,
    pub tol: f64,
    pub bound_factor: f64,
    pub asymptotic_beta_max: f64,
    pub asymptotic_tol: f64,
}

impl Default for Lemma31Config {
    fn default() -> Self {
        Self { depth: 14, tol: 1e-14, bound_factor: 2.0, asymptotic_beta_max: 0.01, asymptotic_tol: 0.02 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhiConfig {
    pub step: f64,
    pub s_max: f64,
    pub limit_s: f64,
    pub limit_tol: f64,
}

impl Default for PhiConfig {
    fn default() -> Self {
        Self { step: 0.01, s_max: 10.0, limit_s: 1e-6, limit_tol: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GreenBoundConfig {
    pub dims: Vec<usize>,
    /// Interior α points strictly between the two admissibility limits.
    pub alpha_points: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub r_points: usize,
    pub rel_tol: f64,
}

impl GreenBoundConfig {
    fn real() -> Self {
        Self { dims: vec![5, 7, 9, 15], alpha_points: 5, r_min: 0.1, r_max: 5.0, r_points: 12, rel_tol: 1e-10 }
    }

    fn complex() -> Self {
        Self { dims: vec![3, 4, 6], alpha_points: 4, r_min: 0.1, r_max: 5.0, r_points: 8, rel_tol: 1e-8 }
    }
}

impl Default for GreenBoundConfig {
    fn default() -> Self {
        Self::real()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DominationConfig {
    pub ps: Vec<f64>,
    /// Number of radial test functions taken from the front of the suite.
    pub functions: usize,
    pub rel_tol: f64,
}

impl Default for DominationConfig {
    fn default() -> Self {
        Self { ps: vec![1.25, 1.5, 1.75], functions: 5, rel_tol: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MicroLocalConfig {
    pub a: f64,
    pub dims: Vec<usize>,
    pub rel_tol: f64,
}

impl Default for MicroLocalConfig {
    fn default() -> Self {
        Self { a: 1.0, dims: vec![5, 9, 17], rel_tol: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegionConfig {
    pub a: f64,
    pub dims: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub rel_tol: f64,
}

impl Default for RegionConfig {
    fn default() -> Self {
        Self { a: 1.0, dims: vec![4, 8], samples: 100, seed: 7, rel_tol: 1e-10 }
    }
}

fn default_complex_bounds() -> GreenBoundConfig {
    GreenBoundConfig::complex()
}

fn default_complex_domination() -> DominationConfig {
    DominationConfig { ps: vec![1.5], functions: 2, rel_tol: 1e-6 }
}

/// Grids and tolerances for every suite; absent sections take their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub lemma31: Lemma31Config,
    pub phi: PhiConfig,
    pub lemma42: GreenBoundConfig,
    #[serde(default = "default_complex_bounds")]
    pub lemma52: GreenBoundConfig,
    pub prop43: DominationConfig,
    pub prop45: MicroLocalConfig,
    #[serde(default = "default_complex_domination")]
    pub prop53: DominationConfig,
    pub cp2b: RegionConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            lemma31: Lemma31Config::default(),
            phi: PhiConfig::default(),
            lemma42: GreenBoundConfig::real(),
            lemma52: GreenBoundConfig::complex(),
            prop43: DominationConfig::default(),
            prop45: MicroLocalConfig::default(),
            prop53: default_complex_domination(),
            cp2b: RegionConfig::default(),
        }
    }
}

impl VerifyConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Config(what.to_string()));
        let tols = [
            self.lemma31.tol,
            self.lemma42.rel_tol,
            self.lemma52.rel_tol,
            self.prop43.rel_tol,
            self.prop45.rel_tol,
            self.prop53.rel_tol,
            self.cp2b.rel_tol,
            self.phi.limit_tol,
        ];
        if tols.iter().any(|t| !(*t > 0.0)) {
            return bad("tolerances must be positive");
        }
        if !(self.phi.step > 0.0 && self.phi.s_max > self.phi.step) {
            return bad("phi: need 0 < step < s_max");
        }
        for g in [&self.lemma42, &self.lemma52] {
            if g.dims.is_empty() || g.alpha_points == 0 || g.r_points < 2 || !(0.0 < g.r_min && g.r_min < g.r_max) {
                return bad(
                    "green bound scans need nonempty dims, alpha_points ≥ 1, r_points ≥ 2 and 0 < r_min < r_max",
                );
            }
        }
        for d in [&self.prop43, &self.prop53] {
            if d.ps.is_empty() || d.functions == 0 || d.ps.iter().any(|p| !(*p > 1.0 && *p < 2.0)) {
                return bad("domination scans need p values in (1, 2) and at least one function");
            }
        }
        if self.prop45.dims.is_empty() || self.prop45.dims.iter().any(|&n| n < 3) || !(self.prop45.a > 0.0) {
            return bad("prop45 needs A > 0 and dimensions ≥ 3");
        }
        if self.cp2b.dims.is_empty()
            || self.cp2b.dims.iter().any(|&n| n < 2)
            || self.cp2b.samples == 0
            || !(self.cp2b.a > 0.0)
        {
            return bad("cp2b needs A > 0, dimensions ≥ 2 and at least one sample");
        }
        if self.lemma31.depth == 0 || !(self.lemma31.bound_factor >= 1.0) {
            return bad("lemma31 needs depth ≥ 1 and bound_factor ≥ 1");
        }
        Ok(())
    }
}

fn quad(rel_tol: f64) -> QuadratureSpec<f64> {
    QuadratureSpec::default().with_rel_tol(rel_tol)
}

fn reproduce_point(name: &str, measured: f64, recorded: f64) -> MarginPoint {
    let rel = (measured - recorded).abs() / recorded.abs();
    let mut p = MarginPoint::new(
        format!("reproduce_{name}"),
        &[("measured", measured), ("recorded", recorded)],
        REPRODUCE_REL_TOL - rel,
    );
    p.pass = reproduces(measured, recorded);
    p
}

fn to_value<S: Serialize>(s: &S) -> serde_json::Value {
    serde_json::to_value(s).unwrap_or(serde_json::Value::Null)
}

/// Runs one suite against the given recorded constants.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig, constants: &Constants) -> Result<VerificationReport> {
    cfg.validate()?;
    match suite {
        Suite::Lemma31 => lemma31(&cfg.lemma31, constants),
        Suite::Phi => phi_suite(&cfg.phi),
        Suite::Lemma42 => green_bounds(Suite::Lemma42, &cfg.lemma42),
        Suite::Lemma52 => green_bounds(Suite::Lemma52, &cfg.lemma52),
        Suite::Prop43 => prop43(&cfg.prop43, constants),
        Suite::Prop45 => prop45(&cfg.prop45, constants),
        Suite::Prop53 => prop53(&cfg.prop53),
        Suite::Cp2b => cp2b(&cfg.cp2b, constants),
    }
}

fn lemma31(c: &Lemma31Config, constants: &Constants) -> Result<VerificationReport> {
    let cal = calibrate_c_o_with::<f64>(c.depth, c.tol);
    let mut points = Vec::new();
    for r in cal.scan.iter().filter(|r| r.beta <= cal.c_o) {
        let ratio = r.s_o / (r.beta * r.beta / 3f64.sqrt());
        let c4 = r.sup_value / r.beta.powi(4);
        let mut m = if r.sup_value > 0.0 { (c.bound_factor * cal.c_fit / c4).ln() } else { f64::NEG_INFINITY };
        if r.beta <= c.asymptotic_beta_max {
            m = m.min(c.asymptotic_tol - (ratio - 1.0).abs());
        }
        points.push(MarginPoint::new(
            "beta",
            &[("beta", r.beta), ("s_o", r.s_o), ("s_o_ratio", ratio), ("sup_over_beta4", c4)],
            m,
        ));
    }
    if cal.scan.len() < c.depth as usize {
        points.push(MarginPoint::new("unsolved_betas", &[("count", (c.depth as usize - cal.scan.len()) as f64)], -1.0));
    }
    points.push(reproduce_point("c_fit", cal.c_fit, constants.c_fit));
    points.push(reproduce_point("c_o", cal.c_o, constants.c_o));
    let mut rep = VerificationReport::assemble(Suite::Lemma31, to_value(c), points);
    rep.constants.insert("c_o".into(), cal.c_o);
    rep.constants.insert("c_fit".into(), cal.c_fit);
    rep.constants.insert("bound_constant".into(), c.bound_factor * cal.c_fit);
    Ok(rep)
}

fn phi_suite(c: &PhiConfig) -> Result<VerificationReport> {
    let mut points = vec![MarginPoint::new("limit", &[("s", c.limit_s)], c.limit_tol - (phi(c.limit_s) - 0.5).abs())];
    let steps = (c.s_max / c.step).round() as usize;
    for k in 1..steps {
        let (a, b) = (c.step * k as f64, c.step * (k + 1) as f64);
        points.push(MarginPoint::new("decrease", &[("s", a), ("s_next", b)], phi(a) - phi(b)));
    }
    let mut rep = VerificationReport::assemble(Suite::Phi, to_value(c), points);
    rep.constants.insert("phi_half".into(), phi(0.5));
    Ok(rep)
}

/// Interior α grid strictly between αρ = low and (1 − α)ρ = 1.
pub fn interior_alphas(rho: f64, low: f64, count: usize) -> Vec<f64> {
    let lo = low / rho;
    let hi = 1.0 - 1.0 / rho;
    (1..=count).map(|k| lo + (hi - lo) * k as f64 / (count + 1) as f64).collect()
}

fn green_bounds(suite: Suite, c: &GreenBoundConfig) -> Result<VerificationReport> {
    let complex = suite == Suite::Lemma52;
    let q = quad(c.rel_tol);
    let radii: Vec<f64> =
        (0..c.r_points).map(|i| c.r_min * (c.r_max / c.r_min).powf(i as f64 / (c.r_points - 1) as f64)).collect();
    let mut tasks = Vec::new();
    let mut notes = Vec::new();
    for &n in &c.dims {
        let rho_sq: f64 = if complex { hc_rho_sq(n) } else { hn_rho_sq(n) };
        let rho = rho_sq.sqrt();
        let low = if complex { 0.25 } else { 0.5 };
        if (1.0 - 1.0 / rho) <= low / rho {
            notes.push(format!("n = {n}: no admissible α (need {low}/ρ < α ≤ 1 − 1/ρ with ρ = {rho})"));
            continue;
        }
        for a in interior_alphas(rho, low, c.alpha_points) {
            for &r in &radii {
                tasks.push((n, a, r, rho_sq));
            }
        }
    }
    let points: Vec<MarginPoint> = pool().install(|| {
        tasks
            .par_iter()
            .map(|&(n, a, r, rho_sq)| {
                let lambda = -(1.0 - a * a) * rho_sq;
                let res = if complex {
                    ln_green_hc(n, lambda, r, &q).and_then(|g| Ok(g - ln_green_lower_bound_hc(n, a, r)?))
                } else {
                    ln_green_hn(n, lambda, r, &q).and_then(|g| Ok(g - ln_green_lower_bound_hn(n, a, r)?))
                };
                let m = res.unwrap_or(f64::NAN);
                MarginPoint::new(
                    "ln_green_over_bound",
                    &[("n", n as f64), ("alpha", a), ("r", r), ("lambda", lambda)],
                    m,
                )
            })
            .collect()
    });
    if points.iter().any(|p| p.margin.is_nan()) {
        notes.push("some points failed to evaluate (margin NaN)".into());
    }
    let mut rep = VerificationReport::assemble(suite, to_value(c), points);
    rep.notes = notes;
    Ok(rep)
}

fn prop43(c: &DominationConfig, constants: &Constants) -> Result<VerificationReport> {
    let q = quad(c.rel_tol);
    let c_star = calibrate_c_star(&QuadratureSpec::<f64>::default())?;
    let suite = radial_suite::<f64>();
    let mut tasks = Vec::new();
    let mut notes = Vec::new();
    for &p in &c.ps {
        let (n, binding) = n_p_with_binding(p)?;
        notes.push(format!("p = {p}: n(p) = {n}, fixed by {binding:?}"));
        for (i, f) in suite.iter().take(c.functions).enumerate() {
            tasks.push((p, n, eps_floor(n, p), i, f.clone()));
        }
    }
    let points: Vec<MarginPoint> = pool().install(|| {
        tasks
            .par_iter()
            .map(|(p, n, eps, i, (name, f, support))| {
                let m =
                    prop43_sides(*n, *p, *eps, c_star, f, support, &q).map(|(l, r)| (r / l).ln()).unwrap_or(f64::NAN);
                MarginPoint::new(
                    format!("ln_rhs_over_lhs:{name}"),
                    &[("p", *p), ("n", *n as f64), ("eps", *eps), ("function", *i as f64)],
                    m,
                )
            })
            .collect()
    });
    let mut points = points;
    points.push(reproduce_point("c_star", c_star, constants.c_star));
    let mut rep = VerificationReport::assemble(Suite::Prop43, to_value(c), points);
    rep.constants.insert("c_star".into(), c_star);
    rep.notes = notes;
    Ok(rep)
}

fn prop53(c: &DominationConfig) -> Result<VerificationReport> {
    let q = quad(c.rel_tol);
    let suite = radial_suite::<f64>();
    let mut tasks = Vec::new();
    let mut notes = Vec::new();
    for &p in &c.ps {
        let shown = n_p_complex_displayed(p)?;
        let n = n_p_complex(p)?;
        notes.push(format!(
            "p = {p}: displayed n(p) = {shown}; scanned at n = {n}, the first with an admissible ε_o < 1"
        ));
        for (i, f) in suite.iter().take(c.functions).enumerate() {
            tasks.push((p, n, eps_floor_complex(n, p), i, f.clone()));
        }
    }
    let points: Vec<MarginPoint> = pool().install(|| {
        tasks
            .par_iter()
            .map(|(p, n, eps, i, (name, f, support))| {
                let m = prop53_sides(*n, *p, *eps, f, support, &q).map(|(l, r)| (r / l).ln()).unwrap_or(f64::NAN);
                MarginPoint::new(
                    format!("ln_rhs_over_lhs:{name}"),
                    &[("p", *p), ("n", *n as f64), ("eps", *eps), ("function", *i as f64)],
                    m,
                )
            })
            .collect()
    });
    let mut rep = VerificationReport::assemble(Suite::Prop53, to_value(c), points);
    rep.notes = notes;
    Ok(rep)
}

fn prop45(c: &MicroLocalConfig, constants: &Constants) -> Result<VerificationReport> {
    let q = quad(c.rel_tol);
    let (measured, pts) = calibrate_c_a(c.a, &c.dims, &q)?;
    let mut notes =
        vec!["dimensions are scanned below n(A); the bound is probed, not restricted to n ≥ n(A)".to_string()];
    let recorded = if constants.prop45.a == c.a && constants.prop45.dims == c.dims {
        Some(constants.prop45.c_a)
    } else {
        notes.push("no recorded c(A) for this (A, dims); margins use the measured value".into());
        None
    };
    let c_a = recorded.unwrap_or(measured);
    let endpoint = pts.iter().filter(|p| p.rhs_unit.at_endpoint).count();
    if endpoint > 0 {
        notes.push(format!("{endpoint} points attain the s-sup at an end of the s-grid"));
    }
    let mut points: Vec<MarginPoint> = pts
        .iter()
        .map(|p| {
            MarginPoint::new(
                format!("margin:{}", p.name),
                &[
                    ("n", p.n as f64),
                    ("lhs", p.lhs),
                    ("rhs_unit", p.rhs_unit.value),
                    ("argmax_s", p.rhs_unit.argmax_s),
                    ("s_at_endpoint", p.rhs_unit.at_endpoint as u8 as f64),
                ],
                p.margin(c_a),
            )
        })
        .collect();
    if let Some(rec) = recorded {
        points.push(reproduce_point("c_a", measured, rec));
    }
    let mut rep = VerificationReport::assemble(Suite::Prop45, to_value(c), points);
    rep.constants.insert("c_a".into(), c_a);
    rep.constants.insert("c_a_measured".into(), measured);
    rep.notes = notes;
    Ok(rep)
}

fn cp2b(c: &RegionConfig, constants: &Constants) -> Result<VerificationReport> {
    let q = quad(c.rel_tol);
    let mut maxima = Vec::new();
    let mut raw = Vec::new();
    for &n in &c.dims {
        let samples = cp2b_samples::<f64>(n, c.a, c.samples, c.seed);
        let ratios: Vec<Result<f64>> = pool().install(|| samples.par_iter().map(|s| cp2b_ratio(n, s, &q)).collect());
        let mut worst = 0.0f64;
        for (s, r) in samples.iter().zip(ratios) {
            let r = r?;
            worst = worst.max(r);
            raw.push((n, *s, r));
        }
        maxima.push((n, worst));
    }
    let measured = round_up_sig4(maxima.iter().map(|m| m.1).fold(0.0, f64::max));
    let recorded = (constants.cp2b.a == c.a
        && constants.cp2b.dims == c.dims
        && constants.cp2b.samples == c.samples
        && constants.cp2b.seed == c.seed)
        .then_some(constants.cp2b.c_a);
    let c_a = recorded.unwrap_or(measured);
    let mut points: Vec<MarginPoint> = raw
        .iter()
        .map(|(n, s, r)| {
            MarginPoint::new(
                "ln_c_over_ratio",
                &[("n", *n as f64), ("a", s.a), ("h", s.h), ("r", s.r), ("ratio", *r)],
                if r.is_finite() { (c_a / r).ln() } else { f64::NEG_INFINITY },
            )
        })
        .collect();
    if maxima.len() >= 2 {
        let (lo, hi) = (maxima[0].1, maxima[maxima.len() - 1].1);
        points.push(MarginPoint::new(
            "stability_within_2x",
            &[("max_first", lo), ("max_last", hi)],
            2f64.ln() - (lo / hi).ln().abs(),
        ));
    }
    let mut notes = Vec::new();
    match recorded {
        Some(rec) => points.push(reproduce_point("c_a", measured, rec)),
        None => notes.push("no recorded C(A) for this configuration; margins use the measured value".into()),
    }
    let mut rep = VerificationReport::assemble(Suite::Cp2b, to_value(c), points);
    for (n, m) in maxima {
        rep.constants.insert(format!("max_ratio_n{n}"), m);
    }
    rep.constants.insert("c_a".into(), c_a);
    rep.notes = notes;
    Ok(rep)
}
