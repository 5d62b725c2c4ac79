//! Discrete centered Hardy–Littlewood maximal operators.
//!
//! Balls on the half-space grid are decided by the exact membership test d(c, ξ) ≤ r at cell
//! centers, so the discrete operator is monotone, sublinear and positively homogeneous.
//! Balls are truncated to the grid and averaged against the in-grid measure; constants are
//! therefore fixed exactly, and any ball reaching the grid edge is flagged.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::geometry::{hn_distance, htype_dilate, htype_mul, HTypeDescriptor, HTypePoint, HnPoint};
use crate::parallel::pool;
use crate::profile::{merged_breaks, Profile};
use crate::quadrature::{integrate_breaks, QuadratureSpec};
use crate::scalar::Real;
use crate::special_fn::{ball_volume, sphere_area};

/// ∫_0^φ sin^k θ dθ by the usual reduction formula.
fn sin_power_integral<T: Real>(k: usize, phi: T) -> T {
    let (s, c) = phi.sin_cos();
    let mut even = phi;
    let mut odd = T::one() - c;
    if k == 0 {
        return even;
    }
    if k == 1 {
        return odd;
    }
    let mut sp = s; // s^{j−1} for the current j
    for j in 2..=k {
        let prev = if j % 2 == 0 { even } else { odd };
        let next = -sp * c / T::of(j) + T::of(j - 1) / T::of(j) * prev;
        if j % 2 == 0 {
            even = next;
        } else {
            odd = next;
        }
        sp = sp * s;
    }
    if k.is_multiple_of(2) {
        even
    } else {
        odd
    }
}

/// σ-measure of {|ξ| = s} ∩ B(x, r) in R^d with |x| = t; for d = 1 the counting measure.
fn sphere_slice<T: Real>(d: usize, s: T, t: T, r: T, full: T, lower: T) -> T {
    if d == 1 {
        let mut k = T::zero();
        if (s - t).abs() <= r {
            k = k + T::one();
        }
        if s + t <= r {
            k = k + T::one();
        }
        return k;
    }
    if s + t <= r {
        return full * s.powi(d as i32 - 1);
    }
    if s >= t + r || s <= t - r || s <= T::zero() {
        return T::zero();
    }
    let c = ((s * s + t * t - r * r) / (T::lit(2.0) * s * t)).max(-T::one()).min(T::one());
    lower * s.powi(d as i32 - 1) * sin_power_integral(d - 2, c.acos())
}

/// Average of the radial function ψ(|·|) over B(x, r) ⊂ R^d, |x| = t.
pub fn euclid_ball_average<T: Real>(d: usize, psi: &Profile<T>, t: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    if d == 0 {
        return domain("euclid_ball_average requires d ≥ 1");
    }
    if !(r > T::zero()) || t < T::zero() {
        return domain(format!("ball radius must be positive and t ≥ 0 (r = {r}, t = {t})"));
    }
    let vol = ball_volume::<T>(d)? * r.powi(d as i32);
    let full = sphere_area::<T>(d)?;
    let lower = if d >= 2 { sphere_area::<T>(d - 1)? } else { T::zero() };
    let lo = (t - r).max(T::zero());
    let hi = t + r;
    let mut extra = psi.breaks();
    extra.push((r - t).abs());
    let breaks = merged_breaks(lo, hi, &extra);
    let mass = integrate_breaks(|s| psi.eval(s) * sphere_slice(d, s, t, r, full, lower), &breaks, quad)?;
    Ok(mass / vol)
}

/// Radii used by [`euclid_maximal_radial`]: 64 per decade on [1e−3, 1e3] plus |t ± b| for
/// every profile break b.
pub fn euclid_r_grid<T: Real>(psi: &Profile<T>, t: T) -> Vec<T> {
    let mut g: Vec<T> = (0..=6 * 64).map(|i| T::lit(10f64.powf(-3.0 + i as f64 / 64.0))).collect();
    for b in psi.breaks() {
        for v in [(t - b).abs(), t + b] {
            if v > T::zero() && v.is_finite() {
                g.push(v);
            }
        }
    }
    g.sort_by(|a, b| a.partial_cmp(b).unwrap());
    g.dedup();
    g
}

/// sup_r of ball averages of ψ(|·|) around a point at distance t from the origin.
pub fn euclid_maximal_radial<T: Real>(d: usize, psi: &Profile<T>, t: T, quad: &QuadratureSpec<T>) -> Result<T> {
    if d == 0 {
        return domain("euclid_maximal_radial requires d ≥ 1");
    }
    if t < T::zero() || !t.is_finite() {
        return domain(format!("euclid_maximal_radial requires finite t ≥ 0, got {t}"));
    }
    let mut best = T::zero();
    if t == T::zero() {
        let dd = T::of(d);
        let mut prev_r = T::zero();
        let mut cum = T::zero();
        for r in euclid_r_grid(psi, t) {
            let breaks = merged_breaks(prev_r, r, &psi.breaks());
            cum = cum + integrate_breaks(|s| psi.eval(s) * s.powi(d as i32 - 1), &breaks, quad)?;
            prev_r = r;
            best = best.max(dd * cum / r.powi(d as i32));
        }
        return Ok(best);
    }
    for r in euclid_r_grid(psi, t) {
        best = best.max(euclid_ball_average(d, psi, t, r, quad)?);
    }
    Ok(best)
}

/// Cell-centered grid on the half space H^n (n = 2, 3): ln y uniform on [−L, L], each
/// x-coordinate uniform on [−X, X]; cell weight y^{1−n}Δ(ln y)Δx^{n−1} = y^{−n}dy dx.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfSpaceGrid<T> {
    pub n: usize,
    pub log_y_half_width: T,
    pub ny: usize,
    pub x_half_width: T,
    pub nx: usize,
    pub values: Vec<T>,
}

impl<T: Real> HalfSpaceGrid<T> {
    pub fn new(n: usize, log_y_half_width: T, ny: usize, x_half_width: T, nx: usize) -> Result<Self> {
        if n != 2 && n != 3 {
            return domain(format!("half-space grids are implemented for n = 2, 3 only, got {n}"));
        }
        if ny == 0 || nx == 0 || !(log_y_half_width > T::zero()) || !(x_half_width > T::zero()) {
            return domain("grid extents and cell counts must be positive");
        }
        let len = ny * nx.pow(n as u32 - 1);
        Ok(Self { n, log_y_half_width, ny, x_half_width, nx, values: vec![T::zero(); len] })
    }

    /// Default desk-scale grids: 65² cells for n = 2, 25³ cells for n = 3.
    pub fn default_for(n: usize) -> Result<Self> {
        match n {
            2 => Self::new(2, T::lit(3.0), 65, T::lit(4.0), 65),
            3 => Self::new(3, T::lit(2.5), 25, T::lit(3.0), 25),
            _ => domain(format!("half-space grids are implemented for n = 2, 3 only, got {n}")),
        }
    }

    pub fn len(&self) -> usize {
        self.ny * self.nx.pow(self.n as u32 - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn du(&self) -> T {
        T::lit(2.0) * self.log_y_half_width / T::of(self.ny)
    }

    pub fn dx(&self) -> T {
        T::lit(2.0) * self.x_half_width / T::of(self.nx)
    }

    fn split(&self, idx: usize) -> (usize, usize, usize) {
        let inner = self.nx.pow(self.n as u32 - 1);
        let iy = idx / inner;
        let rest = idx % inner;
        if self.n == 2 {
            (iy, rest, 0)
        } else {
            (iy, rest / self.nx, rest % self.nx)
        }
    }

    pub fn index(&self, iy: usize, ix: &[usize]) -> usize {
        let mut idx = iy;
        for &j in ix {
            idx = idx * self.nx + j;
        }
        idx
    }

    fn node(&self, i: usize, count: usize, half: T) -> T {
        -half + (T::of(i) + T::lit(0.5)) * T::lit(2.0) * half / T::of(count)
    }

    pub fn point(&self, idx: usize) -> HnPoint<T> {
        let (iy, a, b) = self.split(idx);
        let y = self.node(iy, self.ny, self.log_y_half_width).exp();
        let mut x = vec![self.node(a, self.nx, self.x_half_width)];
        if self.n == 3 {
            x.push(self.node(b, self.nx, self.x_half_width));
        }
        HnPoint { y, x }
    }

    pub fn weight(&self, idx: usize) -> T {
        let (iy, _, _) = self.split(idx);
        let u = self.node(iy, self.ny, self.log_y_half_width);
        (u * (T::one() - T::of(self.n))).exp() * self.du() * self.dx().powi(self.n as i32 - 1)
    }

    /// Cell whose center is closest to (1, 0).
    pub fn center_index(&self) -> usize {
        let pick = |count: usize, half: T| -> usize {
            let h = T::lit(2.0) * half / T::of(count);
            let k = ((half / h) - T::lit(0.5)).round().f64();
            (k.max(0.0) as usize).min(count - 1)
        };
        let iy = pick(self.ny, self.log_y_half_width);
        let ix = pick(self.nx, self.x_half_width);
        if self.n == 2 {
            self.index(iy, &[ix])
        } else {
            self.index(iy, &[ix, ix])
        }
    }

    pub fn sample<F: Fn(&HnPoint<T>) -> T>(&self, f: F) -> Vec<T> {
        (0..self.len()).map(|i| f(&self.point(i))).collect()
    }

    pub fn with_values(mut self, values: Vec<T>) -> Result<Self> {
        if values.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: values.len() });
        }
        if values.iter().any(|v| !(*v >= T::zero()) || !v.is_finite()) {
            return domain("grid values must be finite and nonnegative");
        }
        self.values = values;
        Ok(self)
    }

    /// Whether the hyperbolic ball of radius r about cell `idx` leaves the grid box.
    pub fn ball_touches_boundary(&self, idx: usize, r: T) -> bool {
        let p = self.point(idx);
        let u = p.y.ln();
        if u + r > self.log_y_half_width || u - r < -self.log_y_half_width {
            return true;
        }
        let reach = p.y * r.sinh();
        p.x.iter().any(|x| x.abs() + reach > self.x_half_width)
    }

    /// Log-spaced radii, 64 per decade, from half the smallest cell side (at y = 1) up to 5.
    pub fn default_r_grid(&self) -> Vec<T> {
        let h = T::lit(0.5) * self.du().min(self.dx());
        log_grid(h, T::lit(5.0), 64)
    }

    fn cache(&self) -> Cells<T> {
        let len = self.len();
        let mut c = Cells {
            y: Vec::with_capacity(len),
            x0: Vec::with_capacity(len),
            x1: Vec::with_capacity(len),
            w: Vec::with_capacity(len),
        };
        for i in 0..len {
            let p = self.point(i);
            c.y.push(p.y);
            c.x0.push(p.x[0]);
            c.x1.push(if self.n == 3 { p.x[1] } else { T::zero() });
            c.w.push(self.weight(i));
        }
        c
    }
}

/// Points per decade on [lo, hi], both endpoints included.
pub fn log_grid<T: Real>(lo: T, hi: T, per_decade: usize) -> Vec<T> {
    let (a, b) = (lo.f64().log10(), hi.f64().log10());
    let k = (((b - a) * per_decade as f64).ceil() as usize).max(1);
    (0..=k).map(|i| T::lit(10f64.powf(a + (b - a) * i as f64 / k as f64))).collect()
}

struct Cells<T> {
    y: Vec<T>,
    x0: Vec<T>,
    x1: Vec<T>,
    w: Vec<T>,
}

impl<T: Real> Cells<T> {
    /// cosh d − 1 between cells i and j.
    #[inline]
    fn q(&self, i: usize, j: usize) -> T {
        let dy = self.y[i] - self.y[j];
        let a = self.x0[i] - self.x0[j];
        let b = self.x1[i] - self.x1[j];
        (dy * dy + a * a + b * b) / (T::lit(2.0) * self.y[i] * self.y[j])
    }
}

fn thresholds<T: Real>(r_grid: &[T]) -> Result<Vec<T>> {
    if r_grid.is_empty() || r_grid.windows(2).any(|w| !(w[0] < w[1])) || !(r_grid[0] > T::zero()) {
        return domain("r_grid must be nonempty, positive and strictly increasing");
    }
    // cosh r − 1 = 2 sinh²(r/2)
    Ok(r_grid.iter().map(|r| T::lit(2.0) * (*r * T::lit(0.5)).sinh().powi(2)).collect())
}

fn check_fields<T: Real>(grid: &HalfSpaceGrid<T>, fields: &[&[T]]) -> Result<()> {
    for f in fields {
        if f.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), got: f.len() });
        }
    }
    Ok(())
}

/// Mf at each of `centers` for every field; result is indexed [field][center].
pub fn hn_maximal_many<T: Real>(
    grid: &HalfSpaceGrid<T>,
    fields: &[&[T]],
    centers: &[usize],
    r_grid: &[T],
) -> Result<Vec<Vec<T>>> {
    check_fields(grid, fields)?;
    let thr = thresholds(r_grid)?;
    let cells = grid.cache();
    let k = thr.len();
    let nf = fields.len();
    let per_center: Vec<Vec<T>> = pool().install(|| {
        centers
            .par_iter()
            .map(|&c| {
                let mut wsum = vec![T::zero(); k];
                let mut fsum = vec![T::zero(); k * nf];
                for j in 0..grid.len() {
                    let q = cells.q(c, j);
                    let b = thr.partition_point(|t| *t < q);
                    if b == k {
                        continue;
                    }
                    let w = cells.w[j];
                    wsum[b] = wsum[b] + w;
                    for (fi, f) in fields.iter().enumerate() {
                        fsum[fi * k + b] = fsum[fi * k + b] + f[j] * w;
                    }
                }
                let mut out = vec![T::zero(); nf];
                let mut wc = T::zero();
                let mut fc = vec![T::zero(); nf];
                for b in 0..k {
                    wc = wc + wsum[b];
                    for fi in 0..nf {
                        fc[fi] = fc[fi] + fsum[fi * k + b];
                        if wc > T::zero() {
                            out[fi] = out[fi].max(fc[fi] / wc);
                        }
                    }
                }
                out
            })
            .collect()
    });
    Ok((0..nf).map(|fi| per_center.iter().map(|v| v[fi]).collect()).collect())
}

/// Mf at one center for the grid's own values.
pub fn hn_discrete_maximal<T: Real>(grid: &HalfSpaceGrid<T>, center: usize, r_grid: &[T]) -> Result<T> {
    if center >= grid.len() {
        return domain(format!("center index {center} outside grid of {} cells", grid.len()));
    }
    Ok(hn_maximal_many(grid, &[&grid.values], &[center], r_grid)?[0][0])
}

/// The three terms of M f ≤ M_ε f + S_ε f at one center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decomposition<T> {
    pub m: T,
    pub m_eps: T,
    pub s_eps: T,
}

impl<T: Real> Decomposition<T> {
    /// M − (M_ε + S_ε), nonpositive when the inequality holds.
    pub fn excess(&self) -> T {
        self.m - (self.m_eps + self.s_eps)
    }
}

/// M f over `r_grid`, M_ε f over the radii of `r_grid` below ε together with ε itself, and
/// S_ε f = Σ_{d(c,ξ) > ε} f(ξ)w(ξ)/W(d(c,ξ)) with W(d) the grid measure of the closed ball.
pub fn hn_decomposition<T: Real>(
    grid: &HalfSpaceGrid<T>,
    f: &[T],
    eps: T,
    centers: &[usize],
    r_grid: &[T],
) -> Result<Vec<Decomposition<T>>> {
    check_fields(grid, &[f])?;
    if !(eps > T::zero()) {
        return domain(format!("ε must be positive, got {eps}"));
    }
    let mut small: Vec<T> = r_grid.iter().copied().filter(|r| *r < eps).collect();
    small.push(eps);
    let m = hn_maximal_many(grid, &[f], centers, r_grid)?.remove(0);
    let m_eps = hn_maximal_many(grid, &[f], centers, &small)?.remove(0);
    let q_eps = T::lit(2.0) * (eps * T::lit(0.5)).sinh().powi(2);
    let cells = grid.cache();
    let s_eps: Vec<T> = pool().install(|| {
        centers
            .par_iter()
            .map(|&c| {
                let mut order: Vec<(T, usize)> = (0..grid.len()).map(|j| (cells.q(c, j), j)).collect();
                order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                let mut s = T::zero();
                let mut cum = T::zero();
                let mut i = 0;
                while i < order.len() {
                    // tied distances share one closed ball
                    let mut e = i;
                    while e < order.len() && order[e].0 == order[i].0 {
                        cum = cum + cells.w[order[e].1];
                        e += 1;
                    }
                    if order[i].0 > q_eps {
                        for &(_, j) in &order[i..e] {
                            s = s + f[j] * cells.w[j] / cum;
                        }
                    }
                    i = e;
                }
                s
            })
            .collect()
    });
    Ok((0..centers.len()).map(|i| Decomposition { m: m[i], m_eps: m_eps[i], s_eps: s_eps[i] }).collect())
}

/// (Σ |f|^p w)^{1/p} against the grid measure.
pub fn lp_norm<T: Real>(grid: &HalfSpaceGrid<T>, f: &[T], p: T) -> Result<T> {
    check_fields(grid, &[f])?;
    if !(p >= T::one()) {
        return domain(format!("lp_norm requires p ≥ 1, got {p}"));
    }
    let s: T = f.iter().enumerate().map(|(i, v)| v.abs().powf(p) * grid.weight(i)).sum();
    Ok(s.powf(p.recip()))
}

/// Nonnegative test functions on H^n, built around the origin (1, 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFunction<T> {
    Constant,
    /// 1 on the cell nearest the origin.
    Spike,
    /// Indicator of the closed ball of the given radius about the origin.
    Ball {
        radius: T,
    },
    /// e^{−rate·d(o, ·)}.
    ExpTail {
        rate: T,
    },
    /// e^{−(d(o, ·)/width)²}.
    RadialBump {
        width: T,
    },
}

impl<T: Real> TestFunction<T> {
    pub fn sample(&self, grid: &HalfSpaceGrid<T>) -> Vec<T> {
        let o = HnPoint::origin(grid.n);
        let radial = |g: &dyn Fn(T) -> T| grid.sample(|p| g(hn_distance(&o, p)));
        match *self {
            TestFunction::Constant => vec![T::one(); grid.len()],
            TestFunction::Spike => {
                let mut v = vec![T::zero(); grid.len()];
                v[grid.center_index()] = T::one();
                v
            }
            TestFunction::Ball { radius } => radial(&|d| if d <= radius { T::one() } else { T::zero() }),
            TestFunction::ExpTail { rate } => radial(&|d| (-rate * d).exp()),
            TestFunction::RadialBump { width } => radial(&|d| (-(d / width).powi(2)).exp()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedTestFunction<T> {
    pub name: String,
    #[serde(flatten)]
    pub function: TestFunction<T>,
}

/// The fixed suite used for operator-norm probes.
pub fn default_suite<T: Real>() -> Vec<NamedTestFunction<T>> {
    let named = |name: &str, function| NamedTestFunction { name: name.to_string(), function };
    vec![
        named("constant", TestFunction::Constant),
        named("spike", TestFunction::Spike),
        named("ball_0.5", TestFunction::Ball { radius: T::lit(0.5) }),
        named("ball_1", TestFunction::Ball { radius: T::one() }),
        named("exp_tail_2", TestFunction::ExpTail { rate: T::lit(2.0) }),
        named("exp_tail_4", TestFunction::ExpTail { rate: T::lit(4.0) }),
        named("bump_0.3", TestFunction::RadialBump { width: T::lit(0.3) }),
        named("bump_1", TestFunction::RadialBump { width: T::one() }),
    ]
}

/// Mf for a suite on a grid; ‖Mf‖_p/‖f‖_p is then available for any p.
#[derive(Debug, Clone)]
pub struct OpnormProbe<T> {
    pub grid: HalfSpaceGrid<T>,
    pub names: Vec<String>,
    pub f: Vec<Vec<T>>,
    pub mf: Vec<Vec<T>>,
    /// Whether the largest ball about the suite's center leaves the grid.
    pub boundary_touch: bool,
}

impl<T: Real> OpnormProbe<T> {
    pub fn new(grid: HalfSpaceGrid<T>, suite: &[NamedTestFunction<T>], r_grid: &[T]) -> Result<Self> {
        let f: Vec<Vec<T>> = suite.iter().map(|s| s.function.sample(&grid)).collect();
        let refs: Vec<&[T]> = f.iter().map(|v| v.as_slice()).collect();
        let centers: Vec<usize> = (0..grid.len()).collect();
        let mf = hn_maximal_many(&grid, &refs, &centers, r_grid)?;
        let r_max = *r_grid.last().unwrap();
        let boundary_touch = grid.ball_touches_boundary(grid.center_index(), r_max);
        Ok(Self { names: suite.iter().map(|s| s.name.clone()).collect(), grid, f, mf, boundary_touch })
    }

    pub fn ratios(&self, p: T) -> Result<Vec<T>> {
        self.f
            .iter()
            .zip(&self.mf)
            .map(|(f, mf)| Ok(lp_norm(&self.grid, mf, p)? / lp_norm(&self.grid, f, p)?))
            .collect()
    }

    pub fn max_ratio(&self, p: T) -> Result<T> {
        Ok(self.ratios(p)?.into_iter().fold(T::zero(), T::max))
    }
}

/// max over the suite of ‖Mf‖_p/‖f‖_p on the default grid for H^n.
pub fn empirical_opnorm<T: Real>(n: usize, p: T, suite: &[NamedTestFunction<T>]) -> Result<T> {
    let grid = HalfSpaceGrid::<T>::default_for(n)?;
    let r = grid.default_r_grid();
    OpnormProbe::new(grid, suite, &r)?.max_ratio(p)
}

/// Quadrature on the unit sphere S^{dim} ⊂ R^{dim+1}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereQuadrature<T> {
    pub dim: usize,
    pub nodes: Vec<Vec<T>>,
    pub weights: Vec<T>,
}

impl<T: Real> SphereQuadrature<T> {
    pub fn new(dim: usize, nodes: Vec<Vec<T>>, weights: Vec<T>) -> Result<Self> {
        if nodes.len() != weights.len() || nodes.is_empty() {
            return domain("sphere quadrature needs one weight per node");
        }
        for v in &nodes {
            if v.len() != dim + 1 {
                return Err(Error::DimensionMismatch { expected: dim + 1, got: v.len() });
            }
            let norm: T = v.iter().map(|a| *a * *a).sum();
            if (norm - T::one()).abs() > T::lit(1e-10) {
                return domain("sphere quadrature nodes must be unit vectors");
            }
        }
        if weights.iter().any(|w| !(*w > T::zero())) {
            return domain("sphere quadrature weights must be positive");
        }
        let area = sphere_area::<T>(dim + 1)?;
        let total: T = weights.iter().copied().sum();
        if ((total - area) / area).abs() > T::lit(1e-10) {
            return domain(format!("sphere quadrature weights sum to {total}, expected {area}"));
        }
        Ok(Self { dim, nodes, weights })
    }

    /// N equally spaced nodes on S¹.
    pub fn circle(count: usize) -> Result<Self> {
        if count == 0 {
            return domain("circle quadrature needs at least one node");
        }
        let two_pi = T::PI() + T::PI();
        let h = two_pi / T::of(count);
        let nodes = (0..count).map(|i| {
            let (s, c) = (h * T::of(i)).sin_cos();
            vec![c, s]
        });
        Self::new(1, nodes.collect(), vec![h; count])
    }

    pub fn area(&self) -> T {
        self.weights.iter().copied().sum()
    }
}

/// A function on an H-type group.
pub trait HField<T> {
    fn value(&self, p: &HTypePoint<T>) -> T;
}

impl<T, F: Fn(&HTypePoint<T>) -> T> HField<T> for F {
    fn value(&self, p: &HTypePoint<T>) -> T {
        self(p)
    }
}

/// Samples of a function on H(2,1) at the nodes of [−X, X]² × [−Z, Z], read back by
/// trilinear interpolation; zero outside the box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledField<T> {
    pub x_half_width: T,
    pub rho_half_width: T,
    pub nx: usize,
    pub nrho: usize,
    pub values: Vec<T>,
}

impl<T: Real> SampledField<T> {
    pub fn sample<F: HField<T>>(f: &F, x_half_width: T, nx: usize, rho_half_width: T, nrho: usize) -> Result<Self> {
        if nx < 2 || nrho < 2 {
            return domain("sampled fields need at least two nodes per axis");
        }
        let hx = T::lit(2.0) * x_half_width / T::of(nx - 1);
        let hr = T::lit(2.0) * rho_half_width / T::of(nrho - 1);
        let mut values = Vec::with_capacity(nx * nx * nrho);
        for i in 0..nx {
            for j in 0..nx {
                for k in 0..nrho {
                    let p = HTypePoint {
                        x: vec![-x_half_width + hx * T::of(i), -x_half_width + hx * T::of(j)],
                        rho: vec![-rho_half_width + hr * T::of(k)],
                    };
                    values.push(f.value(&p));
                }
            }
        }
        Ok(Self { x_half_width, rho_half_width, nx, nrho, values })
    }

    fn locate(v: T, half: T, count: usize) -> Option<(usize, T)> {
        let s = (v + half) / (T::lit(2.0) * half) * T::of(count - 1);
        if !(s >= T::zero()) || s > T::of(count - 1) {
            return None;
        }
        let i = (s.floor().f64() as usize).min(count - 2);
        Some((i, s - T::of(i)))
    }
}

impl<T: Real> HField<T> for SampledField<T> {
    fn value(&self, p: &HTypePoint<T>) -> T {
        if p.x.len() != 2 || p.rho.len() != 1 {
            return T::zero();
        }
        let (Some((i, a)), Some((j, b)), Some((k, c))) = (
            Self::locate(p.x[0], self.x_half_width, self.nx),
            Self::locate(p.x[1], self.x_half_width, self.nx),
            Self::locate(p.rho[0], self.rho_half_width, self.nrho),
        ) else {
            return T::zero();
        };
        let at = |di: usize, dj: usize, dk: usize| self.values[((i + di) * self.nx + j + dj) * self.nrho + k + dk];
        let one = T::one();
        let mut s = T::zero();
        for (di, wa) in [(0, one - a), (1, a)] {
            for (dj, wb) in [(0, one - b), (1, b)] {
                for (dk, wc) in [(0, one - c), (1, c)] {
                    s = s + wa * wb * wc * at(di, dj, dk);
                }
            }
        }
        s
    }
}

/// sup over `r_grid` of (1/σ)Σ_i w_i f(point·δ_r(θ_i, 0)).
pub fn heisenberg_spherical_maximal<T: Real, F: HField<T>>(
    d: &HTypeDescriptor<T>,
    f: &F,
    point: &HTypePoint<T>,
    r_grid: &[T],
    sphere: &SphereQuadrature<T>,
) -> Result<T> {
    if sphere.dim + 1 != d.two_n {
        return Err(Error::DimensionMismatch { expected: d.two_n, got: sphere.dim + 1 });
    }
    d.check_point(point)?;
    let area = sphere.area();
    let mut best = T::zero();
    for &r in r_grid {
        let mut s = T::zero();
        for (theta, w) in sphere.nodes.iter().zip(&sphere.weights) {
            let q = htype_dilate(&HTypePoint { x: theta.clone(), rho: vec![T::zero(); d.m] }, r);
            s = s + *w * f.value(&htype_mul(d, point, &q)?);
        }
        best = best.max(s / area);
    }
    Ok(best)
}

/// Centered maximal function on Z with zero extension: sup_k of the mean over [i − k, i + k].
pub fn maximal_1d<T: Real>(f: &[T]) -> Vec<T> {
    let n = f.len();
    let mut prefix = vec![T::zero(); n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i] + f[i];
    }
    (0..n)
        .map(|i| {
            let mut best = f[i];
            for k in 1..n {
                let lo = i.saturating_sub(k);
                let hi = (i + k + 1).min(n);
                best = best.max((prefix[hi] - prefix[lo]) / T::of(2 * k + 1));
            }
            best
        })
        .collect()
}

/// max_i (f∗φ)(i) / (‖φ‖₁ M f(i)) for a symmetric, center-peaked, nonincreasing kernel φ
/// given on offsets −J..=J; at most 1.
pub fn convolution_majorization_1d<T: Real>(f: &[T], phi: &[T]) -> Result<T> {
    if phi.len().is_multiple_of(2) {
        return domain("kernel must have odd length");
    }
    let j = phi.len() / 2;
    for k in 0..j {
        if phi[k] != phi[phi.len() - 1 - k] || phi[k] > phi[k + 1] || phi[k] < T::zero() {
            return domain("kernel must be symmetric, nonnegative and nonincreasing away from the center");
        }
    }
    if f.iter().any(|v| *v < T::zero()) {
        return domain("f must be nonnegative");
    }
    let l1: T = phi.iter().copied().sum();
    let m = maximal_1d(f);
    let mut worst = T::zero();
    for (i, &mi) in m.iter().enumerate() {
        let mut conv = T::zero();
        for (o, w) in phi.iter().enumerate() {
            let idx = i as isize + o as isize - j as isize;
            if idx >= 0 && (idx as usize) < f.len() {
                conv = conv + *w * f[idx as usize];
            }
        }
        if mi > T::zero() {
            worst = worst.max(conv / (l1 * mi));
        }
    }
    Ok(worst)
}
