//! The elementary functions F_β and Φ, the dimension thresholds built from them, and the
//! domination checks for the part at infinity and the micro-local part of the maximal
//! function.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::geometry::{hn_volume_sandwich, region_volume, HTypeDescriptor};
use crate::green::{
    hc_rho_sq, hn_rho_sq, resolvent_apply_radial, resolvent_apply_radial_hc, s_epsilon_radial, s_epsilon_radial_hc,
};
use crate::kernels::sl_apply_log;
use crate::maximal::{euclid_maximal_radial, log_grid};
use crate::profile::{merged_breaks, Profile};
use crate::quadrature::{integrate_breaks, EndpointSubstitution, QuadratureSpec};
use crate::rng::stream;
use crate::scalar::{ln_cosh, ln_sinh, Real};
use crate::special_fn::{ball_volume, ln_ball_volume, sphere_area};

/// F_β(s) = (s/β)² + ln(1 − sinh²s/sinh²β) on 0 ≤ s < β.
pub fn f_beta<T: Real>(beta: T, s: T) -> Result<T> {
    if !(beta > T::zero()) || !(s >= T::zero() && s < beta) {
        return domain(format!("F_β needs β > 0 and 0 ≤ s < β, got β = {beta}, s = {s}"));
    }
    let q = s / beta;
    let x = (s.sinh() / beta.sinh()).powi(2);
    Ok(q * q + (-x).ln_1p())
}

/// F′_β(s) = 2s/β² − sinh 2s/(sinh(β + s) sinh(β − s)).
pub fn f_beta_prime<T: Real>(beta: T, s: T) -> Result<T> {
    if !(beta > T::zero()) || !(s >= T::zero() && s < beta) {
        return domain(format!("F′_β needs β > 0 and 0 ≤ s < β, got β = {beta}, s = {s}"));
    }
    let two = T::lit(2.0);
    Ok(two * s / (beta * beta) - (two * s).sinh() / ((beta + s).sinh() * (beta - s).sinh()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FBetaResult<T> {
    pub beta: T,
    pub s_o: T,
    pub sup_value: T,
}

/// Critical point of F_β by bisection on F′_β over [10⁻⁴β², β(1 − 10⁻¹²)], stopped when the
/// bracket is narrower than `tol` relative to its upper end.
pub fn s_o_solve<T: Real>(beta: T, tol: T) -> Result<FBetaResult<T>> {
    if !(beta > T::zero()) || !(tol > T::zero()) {
        return domain(format!("s_o_solve needs β > 0 and tol > 0, got β = {beta}, tol = {tol}"));
    }
    let mut lo = beta * beta * T::lit(1e-4);
    let mut hi = beta * (T::one() - T::lit(1e-12));
    if !(lo < hi) || !(f_beta_prime(beta, lo)? > T::zero()) || !(f_beta_prime(beta, hi)? < T::zero()) {
        return Err(Error::NoSignChange { beta: beta.f64() });
    }
    while hi - lo > tol * hi {
        let mid = T::lit(0.5) * (lo + hi);
        if f_beta_prime(beta, mid)? > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s_o = T::lit(0.5) * (lo + hi);
    let sup_value = f_beta(beta, s_o)?;
    if !(sup_value > T::zero()) {
        return Err(Error::NoSignChange { beta: beta.f64() });
    }
    Ok(FBetaResult { beta, s_o, sup_value })
}

/// Result of the dyadic β-scan that fixes c_o.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration<T> {
    pub c_o: T,
    /// sup F_β/β⁴ at the smallest scanned β.
    pub c_fit: T,
    pub scan: Vec<FBetaResult<T>>,
}

pub const C_O_FALLBACK: f64 = 0.05;
pub const BETA_SCAN_DEPTH: u32 = 14;

/// Scans β = 2^{−k}, k = 1..=14. c_o is the largest β of the scan such that every smaller
/// scanned β solves and satisfies sup F_β ≤ 2 c_fit β⁴; the fallback 0.05 applies when
/// even the smallest β fails.
pub fn calibrate_c_o<T: Real>() -> Calibration<T> {
    calibrate_c_o_with(BETA_SCAN_DEPTH, 1e-14)
}

/// As [`calibrate_c_o`] with a chosen scan depth and bisection tolerance.
pub fn calibrate_c_o_with<T: Real>(depth: u32, tol: f64) -> Calibration<T> {
    let tol = T::lit(tol);
    let scan: Vec<Option<FBetaResult<T>>> =
        (1..=depth).map(|k| s_o_solve(T::lit(0.5f64.powi(k as i32)), tol).ok()).collect();
    let c_fit = scan.last().and_then(|r| r.as_ref()).map(|r| r.sup_value / r.beta.powi(4)).unwrap_or(T::nan());
    let mut c_o = T::lit(C_O_FALLBACK);
    for r in scan.iter().rev() {
        match r {
            Some(r) if r.sup_value <= T::lit(2.0) * c_fit * r.beta.powi(4) => c_o = r.beta,
            _ => break,
        }
    }
    Calibration { c_o, c_fit, scan: scan.into_iter().flatten().collect() }
}

/// Φ(s) = ln cosh s / s², extended by Φ(0) = 1/2.
pub fn phi<T: Real>(s: T) -> T {
    let a = s.abs();
    if a < T::lit(1e-3) {
        let s2 = a * a;
        return T::lit(0.5) - s2 / T::lit(12.0) + s2 * s2 / T::lit(45.0);
    }
    ln_cosh(a) / (a * a)
}

/// κ_p = ½Φ(½)(1 − p^{−½}) on H^n.
pub fn kappa_p<T: Real>(p: T) -> T {
    let half = T::lit(0.5);
    half * phi(half) * (T::one() - p.powf(-half))
}

/// κ^c_p = ¼Φ(¼)(1 − p^{−½}) on H_c^n.
pub fn kappa_p_complex<T: Real>(p: T) -> T {
    let q = T::lit(0.25);
    q * phi(q) * (T::one() - p.powf(-T::lit(0.5)))
}

fn sqrt_log_ratio<T: Real>(rho: T) -> T {
    (rho.ln() / rho).sqrt()
}

/// κ_p^{−½} √(ln ρ/ρ) with ρ = (n − 1)/2: the smallest admissible ε_o on H^n.
pub fn eps_floor<T: Real>(n: usize, p: T) -> T {
    kappa_p(p).powf(-T::lit(0.5)) * sqrt_log_ratio(T::of(n - 1) * T::lit(0.5))
}

/// (κ^c_p)^{−½} √(ln ρ_c/ρ_c) with ρ_c = n/2: the smallest admissible ε_o on H_c^n.
pub fn eps_floor_complex<T: Real>(n: usize, p: T) -> T {
    kappa_p_complex(p).powf(-T::lit(0.5)) * sqrt_log_ratio(T::of(n) * T::lit(0.5))
}

/// Least n ≥ start with `pred(n)`, for predicates that stay true once true.
fn first_from<P: Fn(usize) -> bool>(start: usize, pred: P) -> usize {
    if pred(start) {
        return start;
    }
    let mut lo = start;
    let mut step = 1usize;
    let mut hi = start + 1;
    while !pred(hi) {
        lo = hi;
        step = step.saturating_mul(2);
        hi = hi.saturating_add(step);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

pub const N_MIN: usize = 100;

/// Which condition fixes n(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Binding {
    /// The displayed Φ-expression condition.
    PhiFloor,
    /// αρ > 1/2 with α = p^{−½}.
    AlphaRho,
    /// (1 − α)ρ ≥ 1.
    OneMinusAlphaRho,
}

/// n(p) on H^n together with the condition that binds it. The ε-floor condition is the
/// displayed one; αρ > 1/2 and (1 − α)ρ ≥ 1 are enforced as well.
pub fn n_p_with_binding<T: Real>(p: T) -> Result<(usize, Binding)> {
    check_p(p)?;
    let alpha = p.powf(-T::lit(0.5));
    let rho = |n: usize| T::of(n - 1) * T::lit(0.5);
    let a = first_from(N_MIN, |n| eps_floor(n, p) < T::lit(0.5));
    let b = first_from(N_MIN, |n| alpha * rho(n) > T::lit(0.5));
    let c = first_from(N_MIN, |n| (T::one() - alpha) * rho(n) >= T::one());
    let mut best = (a, Binding::PhiFloor);
    for cand in [(b, Binding::AlphaRho), (c, Binding::OneMinusAlphaRho)] {
        if cand.0 > best.0 {
            best = cand;
        }
    }
    Ok(best)
}

pub fn n_p<T: Real>(p: T) -> Result<usize> {
    Ok(n_p_with_binding(p)?.0)
}

/// n(p) on H_c^n as displayed: min{n ≥ 100 : (κ^c_p)^{−¼} √(ln(n/2)/(n/2)) < 1/2}.
pub fn n_p_complex_displayed<T: Real>(p: T) -> Result<usize> {
    check_p(p)?;
    let k = kappa_p_complex(p).powf(-T::lit(0.25));
    Ok(first_from(N_MIN, |n| k * sqrt_log_ratio(T::of(n) * T::lit(0.5)) < T::lit(0.5)))
}

/// Least n ≥ n(p) on H_c^n whose ε-floor is below 1/2, so that an admissible ε_o < 1 exists.
pub fn n_p_complex<T: Real>(p: T) -> Result<usize> {
    let shown = n_p_complex_displayed(p)?;
    Ok(first_from(shown, |n| eps_floor_complex(n, p) < T::lit(0.5)))
}

fn check_p<T: Real>(p: T) -> Result<()> {
    if !(p > T::one() && p < T::lit(2.0)) {
        return domain(format!("p must lie in (1, 2), got {p}"));
    }
    Ok(())
}

/// n*(p): least n_* ≥ 100 with κ_p^{−½}√(ln ρ/ρ) ≤ (n − 1)^{−¼} ≤ 2c_o for every n ≥ n_*.
/// Both sides are monotone in n from 100 on, so the first n where both hold works.
pub fn n_star_p<T: Real>(p: T, c_o: T) -> Result<usize> {
    check_p(p)?;
    if !(c_o > T::zero()) {
        return domain(format!("c_o must be positive, got {c_o}"));
    }
    let quarter = |n: usize| T::of(n - 1).powf(-T::lit(0.25));
    Ok(first_from(N_MIN, |n| eps_floor(n, p) <= quarter(n) && quarter(n) <= T::lit(2.0) * c_o))
}

/// r_*(n, p) = κ_p^{−e} √(ln ρ/ρ) with e = 1 as displayed and e = 1/2 matching the ε floor.
pub fn r_star<T: Real>(n: usize, p: T) -> (T, T) {
    let k = kappa_p(p);
    let s = sqrt_log_ratio(T::of(n - 1) * T::lit(0.5));
    (k.recip() * s, k.powf(-T::lit(0.5)) * s)
}

/// n(A) = min{n ≥ 100 : A(n − 1)^{−¼}/2 ≤ c_o}.
pub fn n_a<T: Real>(a: T, c_o: T) -> usize {
    first_from(N_MIN, |n| a * T::of(n - 1).powf(-T::lit(0.25)) * T::lit(0.5) <= c_o)
}

/// n(A) on H_c^n: min{n ≥ 100 : A(n − ½)^{−¼}/2 ≤ c_o}.
pub fn n_a_complex<T: Real>(a: T, c_o: T) -> usize {
    first_from(N_MIN, |n| a * (T::of(n) - T::lit(0.5)).powf(-T::lit(0.25)) * T::lit(0.5) <= c_o)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thresholds<T> {
    pub p: T,
    pub n_p: usize,
    pub n_p_binding: Binding,
    /// ε floor at n = n_p.
    pub eps_lower: T,
    /// r_* with exponent −1/2 on κ_p, at n_ref.
    pub r_star: T,
    /// r_* with the displayed exponent −1 on κ_p, at n_ref.
    pub r_star_displayed: T,
    pub r_star_admissible: bool,
    pub r_star_displayed_admissible: bool,
    /// r_* ≤ (n − 1)^{−¼} checked along a geometric sequence of n from n_star_p to 10¹².
    pub r_star_limit_holds: bool,
    pub n_star_p: usize,
    /// n_star_p + 1, the first dimension where r_* is used.
    pub n_ref: usize,
    pub c_o: T,
    pub a: T,
    pub n_a: usize,
}

pub fn thresholds<T: Real>(p: T, a: T, c_o: T) -> Result<Thresholds<T>> {
    check_p(p)?;
    if !(a > T::zero()) {
        return domain(format!("A must be positive, got {a}"));
    }
    let (n_p, n_p_binding) = n_p_with_binding(p)?;
    let n_star = n_star_p(p, c_o)?;
    let n_ref = n_star + 1;
    let admissible = |n: usize, r: T| {
        let q = T::of(n - 1).powf(-T::lit(0.25));
        r <= q && q <= T::lit(2.0) * c_o
    };
    let (disp, cons) = r_star(n_ref, p);
    let mut limit = true;
    let mut n = n_star as f64;
    while n <= 1e12 {
        let k = n as usize;
        if !admissible(k, r_star(k, p).1) {
            limit = false;
        }
        n *= 1.5;
    }
    Ok(Thresholds {
        p,
        n_p,
        n_p_binding,
        eps_lower: eps_floor(n_p, p),
        r_star: cons,
        r_star_displayed: disp,
        r_star_admissible: admissible(n_ref, cons),
        r_star_displayed_admissible: admissible(n_ref, disp),
        r_star_limit_holds: limit,
        n_star_p: n_star,
        n_ref,
        c_o,
        a,
        n_a: n_a(a, c_o),
    })
}

/// C_* = max over n = 2..=60 and 64 log-spaced r ∈ [0.01, 10] of max(S, 1/S) with
/// S = V(r)/(Ω_n Ψ(r)).
pub fn calibrate_c_star<T: Real>(quad: &QuadratureSpec<T>) -> Result<T> {
    let rs = log_grid(T::lit(0.01), T::lit(10.0), 21);
    let mut c = T::one();
    for n in 2..=60 {
        for &r in &rs {
            let s = hn_volume_sandwich(n, r, quad)?;
            c = c.max(s).max(s.recip());
        }
    }
    Ok(c)
}

/// The radial test functions of the domination scans, with their break points.
pub fn radial_suite<T: Real>() -> Vec<(String, Profile<T>, Vec<T>)> {
    let l = T::lit;
    vec![
        ("indicator_0_1".into(), Profile::Indicator { lo: l(0.0), hi: l(1.0) }, vec![l(0.0), l(1.0)]),
        ("indicator_1_2".into(), Profile::Indicator { lo: l(1.0), hi: l(2.0) }, vec![l(1.0), l(2.0)]),
        ("indicator_0.5_3".into(), Profile::Indicator { lo: l(0.5), hi: l(3.0) }, vec![l(0.5), l(3.0)]),
        ("gaussian_1.5".into(), Profile::Gaussian { center: l(1.5), width: l(0.3) }, vec![l(0.0), l(1.5), l(3.0)]),
        ("cauchy_0.5".into(), Profile::Cauchy { scale: l(0.5) }, vec![l(0.0), l(1.0), l(3.0)]),
    ]
}

/// Both sides of the H^n domination S_ε f ≤ 8C_*n(n − 2)[−ρ²/p′ − Δ]^{−1}f at the centre of a
/// radial f; returns (S_ε f, right side).
pub fn prop43_sides<T: Real>(
    n: usize,
    p: T,
    eps: T,
    c_star: T,
    f: &Profile<T>,
    support: &[T],
    quad: &QuadratureSpec<T>,
) -> Result<(T, T)> {
    check_p(p)?;
    if n < 3 {
        return domain(format!("the H^n domination needs n ≥ 3, got {n}"));
    }
    let p_prime = p / (p - T::one());
    let lambda = -hn_rho_sq::<T>(n) / p_prime;
    let lhs = s_epsilon_radial(n, eps, |r| f.eval(r), support, quad)?;
    let res = resolvent_apply_radial(n, lambda, |r| f.eval(r), support, quad)?;
    Ok((lhs, T::lit(8.0) * c_star * T::of(n) * T::of(n - 2) * res))
}

/// Both sides of the H_c^n domination S_ε f ≤ 100·2n(2n − 2)[−ρ_c²/p′ − Δ]^{−1}f.
pub fn prop53_sides<T: Real>(
    n: usize,
    p: T,
    eps: T,
    f: &Profile<T>,
    support: &[T],
    quad: &QuadratureSpec<T>,
) -> Result<(T, T)> {
    check_p(p)?;
    if n < 2 {
        return domain(format!("the H_c^n domination needs n ≥ 2, got {n}"));
    }
    let p_prime = p / (p - T::one());
    let lambda = -hc_rho_sq::<T>(n) / p_prime;
    let lhs = s_epsilon_radial_hc(n, eps, |r| f.eval(r), support, quad)?;
    let res = resolvent_apply_radial_hc(n, lambda, |r| f.eval(r), support, quad)?;
    Ok((lhs, T::lit(100.0) * T::of(2 * n) * T::of(2 * n - 2) * res))
}

/// Product test function f(v, w) = φ(ln(v/y))ψ(|w|) about g = (y, 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductTest<T> {
    pub name: String,
    pub phi: Profile<T>,
    pub psi: Profile<T>,
}

pub fn product_suite<T: Real>() -> Vec<ProductTest<T>> {
    let l = T::lit;
    let t = |name: &str, phi, psi| ProductTest { name: name.to_string(), phi, psi };
    vec![
        t("constant", Profile::Constant { value: l(1.0) }, Profile::Constant { value: l(1.0) }),
        t("slab_0.05", Profile::Indicator { lo: l(-0.05), hi: l(0.05) }, Profile::Constant { value: l(1.0) }),
        t(
            "offset_gaussian",
            Profile::Gaussian { center: l(0.2), width: l(0.1) },
            Profile::Indicator { lo: l(0.0), hi: l(0.3) },
        ),
        t("upper_tail", Profile::ExpTail { rate: l(3.0) }, Profile::Gaussian { center: l(0.0), width: l(0.5) }),
        t("cauchy_pair", Profile::Cauchy { scale: l(0.1) }, Profile::Cauchy { scale: l(0.2) }),
        t(
            "annulus",
            Profile::Gaussian { center: l(0.0), width: l(0.05) },
            Profile::Indicator { lo: l(0.1), hi: l(0.4) },
        ),
    ]
}

/// ε_o = (A/(n − 1))^{¼}, the largest radius allowed by (n − 1)ε_o⁴ ≤ A.
pub fn eps_o_for<T: Real>(n: usize, a: T) -> T {
    (a / T::of(n - 1)).powf(T::lit(0.25))
}

/// sup over 48 log-spaced r ∈ [10⁻³ε_o, ε_o) of the ball average of f about (y, 0) in H^n.
///
/// With v = y e^u the ball is |u| < r, |w| < R(u), R² = 4y²e^u(sinh²(r/2) − sinh²(u/2)), and
/// dμ = (y e^u)^{1−n} du dw.
pub fn prop45_lhs<T: Real>(n: usize, eps_o: T, f: &ProductTest<T>, y: T, quad: &QuadratureSpec<T>) -> Result<T> {
    if n < 3 {
        return domain(format!("the micro-local check needs n ≥ 3, got {n}"));
    }
    let d = n - 1;
    let omega = sphere_area::<T>(d)?;
    let ball = ball_volume::<T>(d)?;
    let inner = |rr: T| -> Result<T> {
        if !(rr > T::zero()) {
            return Ok(T::zero());
        }
        let b = merged_breaks(T::zero(), rr, &f.psi.breaks());
        Ok(omega * integrate_breaks(|s| f.psi.eval(s) * s.powi(d as i32 - 1), &b, quad)?)
    };
    let outer_quad = quad.with_substitution(EndpointSubstitution::Sqrt);
    let half = T::lit(0.5);
    let mut best = T::zero();
    let top = eps_o * (T::one() - T::lit(1e-9));
    for r in log_grid(eps_o * T::lit(1e-3), top, 16).into_iter().skip(1) {
        let shr = (r * half).sinh().powi(2);
        let big_r = |u: T| {
            let k = shr - (u * half).sinh().powi(2);
            (T::lit(4.0) * y * y * u.exp() * k.max(T::zero())).sqrt()
        };
        let weight = |u: T| (T::of(d) * -(y.ln() + u)).exp();
        let breaks = merged_breaks(-r, r, &f.phi.breaks());
        let mut err = None;
        let mut num_f = |u: T| {
            let ph = f.phi.eval(u);
            if ph == T::zero() {
                return T::zero();
            }
            match inner(big_r(u)) {
                Ok(v) => ph * v * weight(u),
                Err(e) => {
                    err.get_or_insert(e);
                    T::zero()
                }
            }
        };
        let num = integrate_breaks(&mut num_f, &breaks, &outer_quad)?;
        if let Some(e) = err {
            return Err(e);
        }
        let vol = integrate_breaks(|u| ball * big_r(u).powi(d as i32) * weight(u), &[-r, T::zero(), r], &outer_quad)?;
        best = best.max(num / vol);
    }
    Ok(best)
}

/// Right side of the micro-local bound without c(A):
/// M_{R^{n−1}}ψ(0) · sup over 64 log-spaced s ∈ [10⁻⁴, 10²] of e^{sL_{n−1}}φ(ln(·/y))(y).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prop45Rhs<T> {
    pub value: T,
    pub argmax_s: T,
    /// The maximizing s sits at an end of the s-grid.
    pub at_endpoint: bool,
}

pub fn prop45_rhs_unit<T: Real>(n: usize, f: &ProductTest<T>, y: T, quad: &QuadratureSpec<T>) -> Result<Prop45Rhs<T>> {
    let m_psi = euclid_maximal_radial(n - 1, &f.psi, T::zero(), quad)?;
    let alpha = T::of(n - 1);
    let grid: Vec<T> = (0..64).map(|i| T::lit(10f64.powf(-4.0 + 6.0 * i as f64 / 63.0))).collect();
    let mut best = (T::neg_infinity(), 0usize);
    for (i, &s) in grid.iter().enumerate() {
        let v = sl_apply_log(alpha, s, |u| f.phi.eval(u), y, quad)?;
        if v > best.0 {
            best = (v, i);
        }
    }
    Ok(Prop45Rhs { value: m_psi * best.0, argmax_s: grid[best.1], at_endpoint: best.1 == 0 || best.1 == 63 })
}

/// One point of the micro-local scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prop45Point<T> {
    pub n: usize,
    pub name: String,
    pub lhs: T,
    pub rhs_unit: Prop45Rhs<T>,
}

impl<T: Real> Prop45Point<T> {
    pub fn ratio(&self) -> T {
        self.lhs / self.rhs_unit.value
    }

    /// c(A)·RHS/LHS − 1.
    pub fn margin(&self, c_a: T) -> T {
        c_a * self.rhs_unit.value / self.lhs - T::one()
    }
}

pub fn prop45_point<T: Real>(n: usize, a: T, f: &ProductTest<T>, quad: &QuadratureSpec<T>) -> Result<Prop45Point<T>> {
    let y = T::one();
    let eps_o = eps_o_for(n, a);
    Ok(Prop45Point {
        n,
        name: f.name.clone(),
        lhs: prop45_lhs(n, eps_o, f, y, quad)?,
        rhs_unit: prop45_rhs_unit(n, f, y, quad)?,
    })
}

/// c(A)·RHS/LHS − 1 at g = (1, 0) with ε_o = (A/(n − 1))^{¼}.
pub fn prop45_check<T: Real>(n: usize, a: T, f: &ProductTest<T>, c_a: T, quad: &QuadratureSpec<T>) -> Result<T> {
    Ok(prop45_point(n, a, f, quad)?.margin(c_a))
}

/// Rounds up to four significant figures.
pub fn round_up_sig4<T: Real>(x: T) -> T {
    let v = x.f64();
    if !(v > 0.0) {
        return x;
    }
    let e = v.log10().floor() as i32 - 3;
    let s = 10f64.powi(e);
    T::lit((v / s).ceil() * s)
}

/// c(A): largest LHS/RHS over the product suite and dimensions, rounded up.
pub fn calibrate_c_a<T: Real>(a: T, dims: &[usize], quad: &QuadratureSpec<T>) -> Result<(T, Vec<Prop45Point<T>>)> {
    let mut pts = Vec::new();
    for &n in dims {
        for f in product_suite() {
            pts.push(prop45_point(n, a, &f, quad)?);
        }
    }
    let worst = pts.iter().map(|p| p.ratio()).fold(T::zero(), T::max);
    Ok((round_up_sig4(worst), pts))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cp2bSample<T> {
    pub a: T,
    pub h: T,
    pub r: T,
}

/// Samples with a log-uniform in [1/2, 2], r log-uniform in [10⁻²r_max, r_max] where
/// r_max = A(n − ½)^{−¼}, and τ = ln(h/a) uniform in (−0.999r, 0.999r).
pub fn cp2b_samples<T: Real>(n: usize, a_const: T, count: usize, seed: u64) -> Vec<Cp2bSample<T>> {
    let r_max = a_const.f64() * (n as f64 - 0.5).powf(-0.25);
    (0..count)
        .map(|i| {
            let mut g = stream(seed, i as u64);
            let a = 2f64.powf(g.gen_range(-1.0..1.0));
            let r = r_max * 10f64.powf(g.gen_range(-2.0..0.0));
            let tau = r * 0.999 * g.gen_range(-1.0..1.0);
            Cp2bSample { a: T::lit(a), h: T::lit(a * tau.exp()), r: T::lit(r) }
        })
        .collect()
}

/// [region volume/(Ω_{2n}(2 sinh(r/2))^{2n−1})] / [√(n − 1)(ah)^{n/2}e^{−(n−1)τ²/r²}e^{−n²r²/(16(n−1))}]
/// with the horizontal dimension 2(n − 1).
pub fn cp2b_ratio<T: Real>(n: usize, s: &Cp2bSample<T>, quad: &QuadratureSpec<T>) -> Result<T> {
    if n < 2 {
        return domain(format!("cp2b needs n ≥ 2, got {n}"));
    }
    let d = HTypeDescriptor::<T>::heisenberg(n - 1);
    let vol = region_volume(&d, s.a, s.h, s.r, quad)?;
    let nf = T::of(n);
    let nm1 = T::of(n - 1);
    let tau = (s.h / s.a).ln();
    let ln_lhs = vol.ln() - ln_ball_volume::<T>(2 * n)? - T::of(2 * n - 1) * (T::LN_2() + ln_sinh(s.r * T::lit(0.5)));
    let ln_rhs = T::lit(0.5) * nm1.ln() + nf * T::lit(0.5) * (s.a * s.h).ln()
        - nm1 * tau * tau / (s.r * s.r)
        - nf * nf * s.r * s.r / (T::lit(16.0) * nm1);
    Ok((ln_lhs - ln_rhs).exp())
}

/// Largest ratio over the samples; a finite value is the measured C(A).
pub fn cp2b_check<T: Real>(n: usize, samples: &[Cp2bSample<T>], quad: &QuadratureSpec<T>) -> Result<T> {
    let mut worst = T::zero();
    for s in samples {
        let v = cp2b_ratio(n, s, quad)?;
        if !v.is_finite() {
            return domain(format!("cp2b ratio not finite at n = {n}, (a, h, r) = ({}, {}, {})", s.a, s.h, s.r));
        }
        worst = worst.max(v);
    }
    Ok(worst)
}
