//! Resolvent kernels (λ − Δ)^{−1} on H^n and complex hyperbolic space, the Laplace-transform
//! oracle, the explicit lower bounds and radial resolvent applications.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::geometry::ln_hn_volume;
use crate::kernels::{HcHeat, HnHeat};
use crate::quadrature::{integrate_breaks, integrate_to_infinity, QuadratureSpec};
use crate::scalar::{ln_cosh, ln_sinh, Real};
use crate::special_fn::{ln_ball_volume, ln_legendre_q, ln_sphere_area, LegendreParams};

/// ρ² = ((n − 1)/2)², bottom of the spectrum of −Δ on H^n.
pub fn hn_rho_sq<T: Real>(n: usize) -> T {
    let r = T::of(n - 1) * T::lit(0.5);
    r * r
}

/// ρ_c² = n²/4 on H_c^n.
pub fn hc_rho_sq<T: Real>(n: usize) -> T {
    let r = T::of(n) * T::lit(0.5);
    r * r
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams<T> {
    pub n: usize,
    pub lambda: T,
    pub rho_sq: T,
}

impl<T: Real> SpectralParams<T> {
    pub fn hn(n: usize, lambda: T) -> Result<Self> {
        let p = Self { n, lambda, rho_sq: hn_rho_sq(n) };
        p.validate()?;
        Ok(p)
    }

    pub fn hc(n: usize, lambda: T) -> Result<Self> {
        let p = Self { n, lambda, rho_sq: hc_rho_sq(n) };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return domain(format!("spectral parameters need n ≥ 2, got {}", self.n));
        }
        if !(self.lambda > -self.rho_sq) {
            return domain(format!("λ = {} is not above −ρ² = {}", self.lambda, -self.rho_sq));
        }
        Ok(())
    }
}

/// α ∈ (0, 1) with its exponent pair; ϖ² = (1 − α²)ρ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaParams<T> {
    pub alpha: T,
    pub p: T,
    pub p_prime: T,
}

impl<T: Real> AlphaParams<T> {
    /// α = p^{−1/2} for 1 < p < 2.
    pub fn from_p(p: T) -> Result<Self> {
        if !(p > T::one() && p < T::lit(2.0)) {
            return domain(format!("exponent must lie in (1, 2), got p = {p}"));
        }
        Ok(Self { alpha: p.sqrt().recip(), p, p_prime: p / (p - T::one()) })
    }

    pub fn varpi_sq(&self, rho_sq: T) -> T {
        (T::one() - self.alpha * self.alpha) * rho_sq
    }
}

/// θ_n(λ) = √(λ + ρ²) − 1/2.
pub fn theta<T: Real>(n: usize, lambda: T) -> Result<T> {
    let p = SpectralParams::hn(n, lambda)?;
    Ok((p.lambda + p.rho_sq).sqrt() - T::lit(0.5))
}

/// ln G(n, λ, r) from the Legendre closed form
/// G = (2π)^{−n/2} (sinh r)^{−(n−2)/2} e^{−iπ(n−2)/2} Q_θ^{(n−2)/2}(cosh r).
pub fn ln_green_hn<T: Real>(n: usize, lambda: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    let th = theta(n, lambda)?;
    if !(th > T::zero()) {
        return domain(format!("closed form needs θ > 0, got θ = {th} at n = {n}, λ = {lambda}"));
    }
    if !(r > T::zero()) {
        return domain(format!("Green function needs r > 0, got {r}"));
    }
    let gamma = T::of(n - 2) * T::lit(0.5);
    let z = r.cosh();
    let lq = ln_legendre_q(&LegendreParams::new(th, gamma, z)?, quad)?;
    let two_pi = T::lit(2.0) * T::PI();
    Ok(-T::of(n) * T::lit(0.5) * two_pi.ln() - gamma * ln_sinh(r) + lq)
}

pub fn green_hn<T: Real>(n: usize, lambda: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    ln_green_hn(n, lambda, r, quad).map(|v| v.exp())
}

/// ∫₀^∞ e^{−λt} K(t) dt with t = e^u; the window runs from where e^{−r²/4t} is negligible to
/// where e^{−(λ+ρ²)t} is.
fn laplace<T: Real, K: Fn(T) -> Result<T>>(kernel: K, lambda: T, gap: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    let rate = lambda + gap;
    if !(rate > T::zero()) {
        return domain(format!("Laplace transform needs λ > −ρ², got λ = {lambda}"));
    }
    let lo = (r * r / T::lit(240.0)).ln();
    let hi = (T::lit(80.0) / rate).max(r * r).ln();
    let pieces = 48;
    let breaks: Vec<T> = (0..=pieces).map(|i| lo + (hi - lo) * T::of(i) / T::of(pieces)).collect();
    let mut err = None;
    let v = integrate_breaks(
        |u: T| {
            let t = u.exp();
            match kernel(t) {
                Ok(k) => t * (-lambda * t).exp() * k,
                Err(e) => {
                    err.get_or_insert(e);
                    T::zero()
                }
            }
        },
        &breaks,
        quad,
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// G(n, λ, r) as the Laplace transform ∫₀^∞ e^{−λt} K_n(t, r) dt of the heat kernel.
pub fn green_hn_oracle<T: Real>(n: usize, lambda: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    let p = SpectralParams::hn(n, lambda)?;
    if !(r > T::zero()) {
        return domain(format!("Green function needs r > 0, got {r}"));
    }
    let k = HnHeat::new(n)?;
    laplace(|t| k.eval(t, r, quad), lambda, p.rho_sq, r, quad)
}

fn check_alpha<T: Real>(alpha: T, rho: T, low: T) -> Result<()> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return domain(format!("α must lie in (0, 1), got {alpha}"));
    }
    if !(alpha * rho > low) {
        return domain(format!("αρ = {} must exceed {low}", alpha * rho));
    }
    // (1 − α)ρ ≥ 1, with a rounding allowance for grid points placed on the boundary
    if (T::one() - alpha) * rho < T::one() - T::lit(64.0) * T::epsilon() {
        return domain(format!("(1 − α)ρ = {} is below 1", (T::one() - alpha) * rho));
    }
    Ok(())
}

/// ln of [n(n−2)Ω_n]^{−1} (sinh r)^{−(n−2)} (cosh(r/2))^{2ρ(1−α)−2}.
pub fn ln_green_lower_bound_hn<T: Real>(n: usize, alpha: T, r: T) -> Result<T> {
    if n < 3 {
        return domain(format!("lower bound needs n ≥ 3, got {n}"));
    }
    let rho = T::of(n - 1) * T::lit(0.5);
    check_alpha(alpha, rho, T::lit(0.5))?;
    let nf = T::of(n);
    Ok(-(nf * T::of(n - 2)).ln() - ln_ball_volume::<T>(n)? - T::of(n - 2) * ln_sinh(r)
        + (T::lit(2.0) * rho * (T::one() - alpha) - T::lit(2.0)) * ln_cosh(r * T::lit(0.5)))
}

pub fn green_lower_bound_hn<T: Real>(n: usize, alpha: T, r: T) -> Result<T> {
    ln_green_lower_bound_hn(n, alpha, r).map(|v| v.exp())
}

/// ln of the complex hyperbolic resolvent
/// 2^{3−2n} ∫_{ς/2}^∞ sinh r/√(sinh²r − sinh²(ς/2)) G(2n+1, 4λ, r) dr,
/// integrated in u with sinh²r = sinh²(ς/2) + u².
pub fn ln_green_hc<T: Real>(n: usize, lambda: T, varsigma: T, quad: &QuadratureSpec<T>) -> Result<T> {
    SpectralParams::hc(n, lambda)?;
    if !(varsigma > T::zero()) {
        return domain(format!("Green function needs ς > 0, got {varsigma}"));
    }
    let n2 = 2 * n + 1;
    let l4 = T::lit(4.0) * lambda;
    let sh = (varsigma * T::lit(0.5)).sinh();
    let s2 = sh * sh;
    let anchor = ln_green_hn(n2, l4, varsigma * T::lit(0.5), quad)?;
    let mut err = None;
    let mut f = |u: T| {
        let w2 = u * u + s2;
        match ln_green_hn(n2, l4, w2.sqrt().asinh(), quad) {
            Ok(l) => (l - anchor).exp() / (T::one() + w2).sqrt(),
            Err(e) => {
                err.get_or_insert(e);
                T::zero()
            }
        }
    };
    let head = integrate_breaks(&mut f, &[T::zero(), sh.max(T::lit(0.25))], quad)?;
    let tail = integrate_to_infinity(&mut f, sh.max(T::lit(0.25)), sh.max(T::lit(0.25)), quad)?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(T::of(3) * T::LN_2() - T::of(2 * n) * T::LN_2() + anchor + (head + tail).ln())
}

pub fn green_hc<T: Real>(n: usize, lambda: T, varsigma: T, quad: &QuadratureSpec<T>) -> Result<T> {
    ln_green_hc(n, lambda, varsigma, quad).map(|v| v.exp())
}

/// ∫₀^∞ e^{−λt} K^c_n(t, ς) dt.
pub fn green_hc_oracle<T: Real>(n: usize, lambda: T, varsigma: T, quad: &QuadratureSpec<T>) -> Result<T> {
    let p = SpectralParams::hc(n, lambda)?;
    let k = HcHeat::new(n)?;
    laplace(|t| k.eval(t, varsigma, quad), lambda, p.rho_sq, varsigma, quad)
}

/// ln of [2n(2n−2)]^{−1} [2^{2n} Ω_{2n}]^{−1} (sinh(ς/2))^{−(2n−2)} (cosh(ς/4))^{2(1−α)n−4}.
pub fn ln_green_lower_bound_hc<T: Real>(n: usize, alpha: T, varsigma: T) -> Result<T> {
    if n < 2 {
        return domain(format!("lower bound needs n ≥ 2, got {n}"));
    }
    let rho = T::of(n) * T::lit(0.5);
    check_alpha(alpha, rho, T::lit(0.25))?;
    let two_n = 2 * n;
    Ok(-(T::of(two_n) * T::of(two_n - 2)).ln()
        - T::of(two_n) * T::LN_2()
        - ln_ball_volume::<T>(two_n)?
        - T::of(two_n - 2) * ln_sinh(varsigma * T::lit(0.5))
        + (T::lit(2.0) * (T::one() - alpha) * T::of(n) - T::lit(4.0)) * ln_cosh(varsigma * T::lit(0.25)))
}

pub fn green_lower_bound_hc<T: Real>(n: usize, alpha: T, varsigma: T) -> Result<T> {
    ln_green_lower_bound_hc(n, alpha, varsigma).map(|v| v.exp())
}

fn check_support<T: Real>(support: &[T]) -> Result<()> {
    if support.len() < 2 || !(support[0] >= T::zero()) || support.windows(2).any(|w| !(w[1] > w[0])) {
        return domain("support must be an ascending list of at least two nonnegative break points");
    }
    Ok(())
}

/// [λ − Δ]^{−1} f at the centre of a radial f supported in [support₀, support_last]:
/// ∫ G(n, λ, r) f(r) ω_{n−1} sinh^{n−1}r dr. The break points should include every
/// discontinuity of f.
pub fn resolvent_apply_radial<T: Real, F: Fn(T) -> T>(
    n: usize,
    lambda: T,
    f: F,
    support: &[T],
    quad: &QuadratureSpec<T>,
) -> Result<T> {
    check_support(support)?;
    let ln_omega = ln_sphere_area::<T>(n)?;
    let k = T::of(n - 1);
    let mut err = None;
    let v = integrate_breaks(
        |r: T| {
            let fr = f(r);
            if fr == T::zero() || !(r > T::zero()) {
                return T::zero();
            }
            match ln_green_hn(n, lambda, r, quad) {
                Ok(lg) => fr * (lg + ln_omega + k * ln_sinh(r)).exp(),
                Err(e) => {
                    err.get_or_insert(e);
                    T::zero()
                }
            }
        },
        support,
        quad,
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// S_ε f at the centre of a radial f: ∫_{r ≥ ε} f(r)/V(r) ω_{n−1} sinh^{n−1}r dr.
pub fn s_epsilon_radial<T: Real, F: Fn(T) -> T>(
    n: usize,
    epsilon: T,
    f: F,
    support: &[T],
    quad: &QuadratureSpec<T>,
) -> Result<T> {
    check_support(support)?;
    if !(epsilon > T::zero()) {
        return domain(format!("S_ε needs ε > 0, got {epsilon}"));
    }
    let mut breaks: Vec<T> = support.iter().copied().filter(|&b| b > epsilon).collect();
    if breaks.is_empty() {
        return Ok(T::zero());
    }
    breaks.insert(0, epsilon.max(support[0]));
    let ln_omega = ln_sphere_area::<T>(n)?;
    let k = T::of(n - 1);
    let mut err = None;
    let v = integrate_breaks(
        |r: T| {
            let fr = f(r);
            if fr == T::zero() {
                return T::zero();
            }
            match ln_hn_volume(n, r, quad) {
                Ok(lv) => fr * (ln_omega + k * ln_sinh(r) - lv).exp(),
                Err(e) => {
                    err.get_or_insert(e);
                    T::zero()
                }
            }
        },
        &breaks,
        quad,
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// [λ − Δ]^{−1} f at the centre of a radial f on H_c^n:
/// ∫ G_c(n, λ, ς) f(ς) 2^{2n−1} ω_{2n−1} sinh^{2n−1}(ς/2) cosh(ς/2) dς.
pub fn resolvent_apply_radial_hc<T: Real, F: Fn(T) -> T>(
    n: usize,
    lambda: T,
    f: F,
    support: &[T],
    quad: &QuadratureSpec<T>,
) -> Result<T> {
    check_support(support)?;
    let half = T::lit(0.5);
    let ln_c = T::of(2 * n - 1) * T::LN_2() + ln_sphere_area::<T>(2 * n)?;
    let k = T::of(2 * n - 1);
    let mut err = None;
    let v = integrate_breaks(
        |s: T| {
            let fs = f(s);
            if fs == T::zero() || !(s > T::zero()) {
                return T::zero();
            }
            match ln_green_hc(n, lambda, s, quad) {
                Ok(lg) => fs * (lg + ln_c + k * ln_sinh(s * half) + ln_cosh(s * half)).exp(),
                Err(e) => {
                    err.get_or_insert(e);
                    T::zero()
                }
            }
        },
        support,
        quad,
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// S_ε f at the centre of a radial f on H_c^n: ∫_{ς ≥ ε} f(ς) V_c′(ς)/V_c(ς) dς with
/// V_c′/V_c = n coth(ς/2).
pub fn s_epsilon_radial_hc<T: Real, F: Fn(T) -> T>(
    n: usize,
    epsilon: T,
    f: F,
    support: &[T],
    quad: &QuadratureSpec<T>,
) -> Result<T> {
    check_support(support)?;
    if !(epsilon > T::zero()) {
        return domain(format!("S_ε needs ε > 0, got {epsilon}"));
    }
    let mut breaks: Vec<T> = support.iter().copied().filter(|&b| b > epsilon).collect();
    if breaks.is_empty() {
        return Ok(T::zero());
    }
    breaks.insert(0, epsilon.max(support[0]));
    let nn = T::of(n);
    integrate_breaks(|s: T| f(s) * nn / (s * T::lit(0.5)).tanh(), &breaks, quad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_values() {
        assert!((theta(3, 0.0_f64).unwrap() - 0.5).abs() < 1e-15);
        assert!(theta(2, 0.0_f64).unwrap().abs() < 1e-15);
        let a = 0.7_f64;
        let rho_sq: f64 = hn_rho_sq(7);
        let v = theta(7, -(1.0 - a * a) * rho_sq).unwrap();
        assert!((v - (a * rho_sq.sqrt() - 0.5)).abs() < 1e-14);
        assert!(theta(3, -1.0_f64).is_err());
    }

    #[test]
    fn closed_form_vs_laplace() {
        let q = QuadratureSpec::<f64>::default();
        for &(n, l, r) in &[(3usize, 0.0, 1.0), (5, 1.0, 2.0), (4, 0.0, 0.5)] {
            let a = green_hn(n, l, r, &q).unwrap();
            let b = green_hn_oracle(n, l, r, &q).unwrap();
            assert!((a - b).abs() < 1e-6 * b, "n={n} λ={l} r={r}: {a} {b}");
        }
    }

    #[test]
    fn three_dimensional_closed_form() {
        // G(3, λ, r) = e^{−√(λ+1) r} / (4π sinh r)
        let q = QuadratureSpec::<f64>::default();
        for &(l, r) in &[(0.0_f64, 1.0_f64), (2.0, 0.3)] {
            let e = (-(l + 1.0).sqrt() * r).exp() / (4.0 * std::f64::consts::PI * r.sinh());
            let v = green_hn(3, l, r, &q).unwrap();
            assert!((v - e).abs() < 1e-9 * e);
        }
    }

    #[test]
    fn two_dimensional_needs_positive_theta() {
        let q = QuadratureSpec::<f64>::default();
        assert!(green_hn(2, 0.0, 1.0, &q).is_err());
        let a = green_hn(2, 0.5, 1.0, &q).unwrap();
        let b = green_hn_oracle(2, 0.5, 1.0, &q).unwrap();
        assert!((a - b).abs() < 1e-6 * b);
    }

    #[test]
    fn complex_closed_form_vs_laplace() {
        let q = QuadratureSpec::<f64>::default();
        let a = green_hc(2, 0.0, 1.0, &q).unwrap();
        let b = green_hc_oracle(2, 0.0, 1.0, &q).unwrap();
        assert!((a - b).abs() < 1e-5 * b, "{a} {b}");
    }

    #[test]
    fn bound_preconditions() {
        assert!(green_lower_bound_hn(5, 0.6_f64, 1.0).is_err());
        assert!(green_lower_bound_hn(7, 0.6_f64, 1.0).is_ok());
        assert!(green_lower_bound_hn(2, 0.3_f64, 1.0).is_err());
        assert!(green_lower_bound_hc(3, 0.6_f64, 1.0).is_err());
        assert!(green_lower_bound_hc(4, 0.5_f64, 1.0).is_ok());
    }

    #[test]
    fn radial_applications() {
        let q = QuadratureSpec::<f64>::default();
        let z = resolvent_apply_radial(3, 1.0, |_| 0.0, &[1.0, 2.0], &q).unwrap();
        assert_eq!(z, 0.0);
        let one = resolvent_apply_radial(3, 1.0, |_| 1.0, &[1.0, 2.0], &q).unwrap();
        let two = resolvent_apply_radial(3, 1.0, |_| 2.0, &[1.0, 2.0], &q).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-13 * one);
        // n = 3: ∫₁² e^{−√2 r}/(4π sinh r) 4π sinh²r dr = ∫₁² e^{−√2 r} sinh r dr
        let s2 = 2f64.sqrt();
        let anti = |r: f64| 0.5 * ((1.0 - s2) * r).exp() / (1.0 - s2) + 0.5 * (-(1.0 + s2) * r).exp() / (1.0 + s2);
        let e = anti(2.0) - anti(1.0);
        assert!((one - e).abs() < 1e-9 * e, "{one} {e}");
        assert_eq!(s_epsilon_radial(3, 3.0, |_| 1.0, &[1.0, 2.0], &q).unwrap(), 0.0);
        // ∫_ε^b V'/V = ln V(b) − ln V(ε)
        let s = s_epsilon_radial(3, 1.0, |_| 1.0, &[1.0, 2.0], &q).unwrap();
        let e = ln_hn_volume(3, 2.0, &q).unwrap() - ln_hn_volume(3, 1.0, &q).unwrap();
        assert!((s - e).abs() < 1e-9 * e);
    }

    #[test]
    fn complex_radial_applications() {
        let q = QuadratureSpec::<f64>::default();
        // ∫_1^2 n coth(ς/2) dς = 2n ln(sinh 1 / sinh ½)
        let s = s_epsilon_radial_hc(3, 1.0, |_| 1.0, &[0.5, 2.0], &q).unwrap();
        let e = 6.0 * (1f64.sinh() / 0.5f64.sinh()).ln();
        assert!((s - e).abs() < 1e-10 * e);
        let one = resolvent_apply_radial_hc(2, 0.0, |_| 1.0, &[1.0, 1.5], &q.with_rel_tol(1e-7)).unwrap();
        assert!(one > 0.0 && one.is_finite());
    }
}
