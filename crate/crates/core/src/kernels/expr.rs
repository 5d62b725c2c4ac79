//! Closed term algebra for radial kernels built from a Gaussian by the operator (1/sinh ωr)∂_r.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::scalar::{ln_cosh, ln_sinh, Real};

/// coeff · r^{r_pow} · t^{−inv_t_pow} · cosh^{cosh_pow}(ωr) · sinh^{−inv_sinh_pow}(ωr).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term<T> {
    pub coeff: T,
    pub r_pow: u32,
    pub inv_t_pow: u32,
    pub cosh_pow: i32,
    pub inv_sinh_pow: u32,
}

type Key = (u32, u32, i32, u32);

impl<T> Term<T> {
    fn key(&self) -> Key {
        (self.r_pow, self.inv_t_pow, self.cosh_pow, self.inv_sinh_pow)
    }
}

/// Σ terms × t^{−1/2} e^{−r²/4t} e^{−exp_rate·t}, hyperbolic functions taken at ωr.
///
/// Below ωr = 0.5 the expression is evaluated from its Taylor expansion in r (negative
/// powers cancel identically for the smooth kernels built here), which avoids the
/// cancellation between the individual singular terms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialKernelExpr<T> {
    pub terms: Vec<Term<T>>,
    pub exp_rate: T,
    pub omega: T,
    #[serde(skip)]
    series: Vec<(i32, u32, T)>,
}

const SERIES_LEN: usize = 40;
const SERIES_SWITCH: f64 = 0.5;

impl<T: Real> RadialKernelExpr<T> {
    /// coeff · t^{−1/2} e^{−r²/4t}.
    pub fn gaussian(coeff: T, omega: T) -> Self {
        let mut e = Self {
            terms: vec![Term { coeff, r_pow: 0, inv_t_pow: 0, cosh_pow: 0, inv_sinh_pow: 0 }],
            exp_rate: T::zero(),
            omega,
            series: Vec::new(),
        };
        e.canonicalize();
        e
    }

    /// scale · (1/sinh ωr) ∂_r applied to the expression.
    pub fn apply_d(&self, scale: T) -> Self {
        let w = self.omega;
        let half = T::lit(0.5);
        let mut out = Vec::with_capacity(self.terms.len() * 4);
        for t in &self.terms {
            let c = t.coeff * scale;
            let (a, b, k, d) = (t.r_pow, t.inv_t_pow, t.cosh_pow, t.inv_sinh_pow);
            if a > 0 {
                out.push(Term {
                    coeff: c * T::of(a as usize),
                    r_pow: a - 1,
                    inv_t_pow: b,
                    cosh_pow: k,
                    inv_sinh_pow: d + 1,
                });
            }
            if k != 0 {
                out.push(Term {
                    coeff: c * w * T::lit(k as f64),
                    r_pow: a,
                    inv_t_pow: b,
                    cosh_pow: k - 1,
                    inv_sinh_pow: d,
                });
            }
            if d > 0 {
                out.push(Term {
                    coeff: -c * w * T::of(d as usize),
                    r_pow: a,
                    inv_t_pow: b,
                    cosh_pow: k + 1,
                    inv_sinh_pow: d + 2,
                });
            }
            out.push(Term { coeff: -c * half, r_pow: a + 1, inv_t_pow: b + 1, cosh_pow: k, inv_sinh_pow: d + 1 });
        }
        let mut e = Self { terms: out, exp_rate: self.exp_rate, omega: w, series: Vec::new() };
        e.canonicalize();
        e
    }

    /// Multiplies by cosh^k(ωr).
    pub fn mul_cosh(&self, k: i32) -> Self {
        let mut e = self.clone();
        for t in &mut e.terms {
            t.cosh_pow += k;
        }
        e.canonicalize();
        e
    }

    pub fn scale(&self, c: T) -> Self {
        let mut e = self.clone();
        for t in &mut e.terms {
            t.coeff = t.coeff * c;
        }
        e.canonicalize();
        e
    }

    /// Multiplies by e^{−rate·t}.
    pub fn damp(&self, rate: T) -> Self {
        let mut e = self.clone();
        e.exp_rate = e.exp_rate + rate;
        e
    }

    /// Sum of two expressions sharing ω and exp_rate.
    pub fn add(&self, other: &Self) -> Self {
        assert!(self.omega == other.omega && self.exp_rate == other.exp_rate, "incompatible expressions");
        let mut e = self.clone();
        e.terms.extend_from_slice(&other.terms);
        e.canonicalize();
        e
    }

    /// Merges like terms, drops zero coefficients, sorts, and rebuilds the small-r expansion.
    pub fn canonicalize(&mut self) {
        let mut map: BTreeMap<Key, T> = BTreeMap::new();
        for t in &self.terms {
            let e = map.entry(t.key()).or_insert(T::zero());
            *e = *e + t.coeff;
        }
        self.terms = map
            .into_iter()
            .filter(|(_, c)| *c != T::zero())
            .map(|((r_pow, inv_t_pow, cosh_pow, inv_sinh_pow), coeff)| Term {
                coeff,
                r_pow,
                inv_t_pow,
                cosh_pow,
                inv_sinh_pow,
            })
            .collect();
        self.series = self.build_series();
    }

    fn needs_series(&self) -> bool {
        self.terms.iter().any(|t| t.inv_sinh_pow > 0)
    }

    fn build_series(&self) -> Vec<(i32, u32, T)> {
        if !self.needs_series() {
            return Vec::new();
        }
        let w = self.omega;
        let mut cache: HashMap<(u32, i32), Vec<T>> = HashMap::new();
        let mut acc: BTreeMap<(i32, u32), T> = BTreeMap::new();
        let min_shift = self.terms.iter().map(|t| t.r_pow as i32 - t.inv_sinh_pow as i32).min().unwrap_or(0);
        let p_max = min_shift + 2 * (SERIES_LEN as i32 - 1);
        for t in &self.terms {
            let beta = cache
                .entry((t.inv_sinh_pow, t.cosh_pow))
                .or_insert_with(|| bracket_series::<T>(t.inv_sinh_pow, t.cosh_pow, SERIES_LEN));
            let shift = t.r_pow as i32 - t.inv_sinh_pow as i32;
            let base = t.coeff * w.powi(-(t.inv_sinh_pow as i32));
            let w2 = w * w;
            let mut wp = T::one();
            for (j, bj) in beta.iter().enumerate() {
                let p = shift + 2 * j as i32;
                if p > p_max {
                    break;
                }
                let e = acc.entry((p, t.inv_t_pow)).or_insert(T::zero());
                *e = *e + base * *bj * wp;
                wp = wp * w2;
            }
        }
        acc.into_iter().filter(|((p, _), _)| *p >= 0).map(|((p, b), c)| (p, b, c)).collect()
    }

    /// Coefficients of negative powers of r that the small-r expansion discards, relative to
    /// the largest retained coefficient; they cancel exactly for smooth kernels.
    pub fn discarded_laurent_residual(&self) -> T {
        if !self.needs_series() {
            return T::zero();
        }
        let full = {
            let mut acc: BTreeMap<(i32, u32), T> = BTreeMap::new();
            for t in &self.terms {
                let beta = bracket_series::<T>(t.inv_sinh_pow, t.cosh_pow, SERIES_LEN);
                let shift = t.r_pow as i32 - t.inv_sinh_pow as i32;
                let base = t.coeff * self.omega.powi(-(t.inv_sinh_pow as i32));
                let w2 = self.omega * self.omega;
                let mut wp = T::one();
                for (j, bj) in beta.iter().enumerate() {
                    let p = shift + 2 * j as i32;
                    if p >= 0 {
                        break;
                    }
                    let e = acc.entry((p, t.inv_t_pow)).or_insert(T::zero());
                    *e = *e + base * *bj * wp;
                    wp = wp * w2;
                }
            }
            acc
        };
        let scale = self.terms.iter().map(|t| t.coeff.abs()).fold(T::zero(), T::max);
        full.values().map(|c| c.abs()).fold(T::zero(), T::max) / scale
    }

    /// Value at (t, r), t > 0, r ≥ 0.
    pub fn eval(&self, t: T, r: T) -> T {
        let r = r.abs();
        let global = -r * r / (T::lit(4.0) * t) - self.exp_rate * t - T::lit(0.5) * t.ln();
        if self.needs_series() && self.omega * r < T::lit(SERIES_SWITCH) {
            let inv_t = t.recip();
            let mut s = T::zero();
            for &(p, b, c) in &self.series {
                s = s + c * inv_t.powi(b as i32) * r.powi(p);
            }
            return s * global.exp();
        }
        self.eval_direct_with(t, r, global)
    }

    /// Term-by-term evaluation without the small-r expansion.
    pub fn eval_direct(&self, t: T, r: T) -> T {
        let global = -r * r / (T::lit(4.0) * t) - self.exp_rate * t - T::lit(0.5) * t.ln();
        self.eval_direct_with(t, r, global)
    }

    fn eval_direct_with(&self, t: T, r: T, global: T) -> T {
        let wr = self.omega * r;
        let (lr, lt, lc) = (r.ln(), t.ln(), ln_cosh(wr));
        let ls = if self.needs_series() { ln_sinh(wr) } else { T::zero() };
        let mut logs = Vec::with_capacity(self.terms.len());
        let mut peak = T::neg_infinity();
        for term in &self.terms {
            let mut l = term.coeff.abs().ln() - T::of(term.inv_t_pow as usize) * lt + T::lit(term.cosh_pow as f64) * lc;
            if term.r_pow > 0 {
                l = l + T::of(term.r_pow as usize) * lr;
            }
            if term.inv_sinh_pow > 0 {
                l = l - T::of(term.inv_sinh_pow as usize) * ls;
            }
            peak = peak.max(l);
            logs.push(l);
        }
        if peak == T::neg_infinity() {
            return T::zero();
        }
        let mut s = T::zero();
        for (term, l) in self.terms.iter().zip(logs) {
            let v = (l - peak).exp();
            s = s + if term.coeff < T::zero() { -v } else { v };
        }
        s * (peak + global).exp()
    }
}

/// Taylor coefficients in x = y² of (y/sinh y)^d · cosh^k y.
fn bracket_series<T: Real>(d: u32, k: i32, len: usize) -> Vec<T> {
    let mut sinhc = vec![T::zero(); len];
    let mut cosh = vec![T::zero(); len];
    let mut fact = T::one();
    for j in 0..len {
        // fact = (2j)!
        if j > 0 {
            fact = fact * T::of(2 * j - 1) * T::of(2 * j);
        }
        cosh[j] = fact.recip();
        sinhc[j] = (fact * T::of(2 * j + 1)).recip();
    }
    let inv_sinhc = series_inv(&sinhc);
    let a = series_pow(&inv_sinhc, d);
    let c = if k >= 0 { series_pow(&cosh, k as u32) } else { series_pow(&series_inv(&cosh), (-k) as u32) };
    series_mul(&a, &c)
}

fn series_mul<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len();
    let mut out = vec![T::zero(); n];
    for i in 0..n {
        if a[i] == T::zero() {
            continue;
        }
        for j in 0..n - i {
            out[i + j] = out[i + j] + a[i] * b[j];
        }
    }
    out
}

fn series_inv<T: Real>(a: &[T]) -> Vec<T> {
    let n = a.len();
    let mut b = vec![T::zero(); n];
    b[0] = a[0].recip();
    for j in 1..n {
        let s: T = (1..=j).map(|i| a[i] * b[j - i]).sum();
        b[j] = -s * b[0];
    }
    b
}

fn series_pow<T: Real>(a: &[T], mut e: u32) -> Vec<T> {
    let mut result = vec![T::zero(); a.len()];
    result[0] = T::one();
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = series_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(&base, &base);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_series_matches_direct() {
        for &(d, k) in &[(1u32, 0i32), (3, 2), (5, -1), (0, -3)] {
            let b = bracket_series::<f64>(d, k, SERIES_LEN);
            for &y in &[0.1_f64, 0.4, 0.8] {
                let x = y * y;
                let s: f64 = b.iter().enumerate().map(|(j, c)| c * x.powi(j as i32)).sum();
                let direct = (y / y.sinh()).powi(d as i32) * y.cosh().powi(k);
                assert!((s - direct).abs() < 1e-13 * direct.abs(), "d={d} k={k} y={y}");
            }
        }
    }

    #[test]
    fn derivative_of_gaussian() {
        // (1/sinh r)∂_r e^{−r²/4t} = −(r/(2t)) e^{−r²/4t}/sinh r
        let e = RadialKernelExpr::<f64>::gaussian(1.0, 1.0).apply_d(1.0);
        let (t, r) = (0.7_f64, 1.3_f64);
        let expect = -(r / (2.0 * t)) * (-r * r / (4.0 * t)).exp() / r.sinh() / t.sqrt();
        assert!((e.eval(t, r) - expect).abs() < 1e-14 * expect.abs());
    }

    #[test]
    fn series_and_direct_agree_at_switch() {
        let mut e = RadialKernelExpr::<f64>::gaussian(1.0, 1.0);
        for _ in 0..4 {
            e = e.apply_d(-1.0);
        }
        for &t in &[0.2, 1.0, 3.0] {
            let r = SERIES_SWITCH;
            let a = e.eval(t, r * (1.0 - 1e-12));
            let b = e.eval_direct(t, r);
            assert!((a - b).abs() < 1e-9 * b.abs(), "t={t}: {a} {b}");
        }
        assert!(e.discarded_laurent_residual() < 1e-12);
    }

    #[test]
    fn half_frequency_with_negative_cosh_power() {
        let e = RadialKernelExpr::<f64>::gaussian(1.0, 0.5).apply_d(-1.0).apply_d(-0.5).mul_cosh(-1);
        for &r in &[0.9_f64, 1.1, 3.0] {
            let a = e.eval(0.8, r);
            let b = e.eval_direct(0.8, r);
            assert!((a - b).abs() < 1e-9 * b.abs(), "r={r}");
        }
        assert!(e.eval(0.8, 0.0).is_finite());
    }
}
