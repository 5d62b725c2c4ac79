//! Gamma-family functions, sphere and ball constants, double factorials and the
//! Legendre function of the second kind through its integral representation.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_log_breaks, QuadratureSpec};
use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0 (Lanczos, g = 7, nine terms; reflection below 1/2).
pub fn log_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return domain(format!("log_gamma requires x > 0, got {x}"));
    }
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        let pi = T::PI();
        return pi.ln() - (pi * x).sin().abs().ln() - log_gamma_unchecked(T::one() - x);
    }
    let z = x - T::one();
    let mut a = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + T::lit(c) / (z + T::of(i));
    }
    let t = z + T::lit(LANCZOS_G) + half;
    half * (T::PI() + T::PI()).ln() + (z + half) * t.ln() - t + a.ln()
}

/// ω_{n−1} = 2π^{n/2}/Γ(n/2), the area of the unit sphere in R^n.
pub fn sphere_area<T: Real>(n: usize) -> Result<T> {
    if n == 0 {
        return domain("sphere_area requires n ≥ 1");
    }
    if n > 200 {
        return Ok(ln_sphere_area::<T>(n)?.exp());
    }
    // ω_{k+1} = 2π ω_{k−1} / k, indexed by sphere dimension k.
    let two_pi = T::PI() + T::PI();
    let (mut prev, mut cur) = (T::lit(2.0), two_pi);
    if n == 1 {
        return Ok(prev);
    }
    for k in 1..n - 1 {
        let next = two_pi * prev / T::of(k);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Ω_n = π^{n/2}/Γ(n/2 + 1), the volume of the unit ball in R^n.
pub fn ball_volume<T: Real>(n: usize) -> Result<T> {
    if n == 0 {
        return domain("ball_volume requires n ≥ 1");
    }
    if n > 200 {
        return Ok(ln_ball_volume::<T>(n)?.exp());
    }
    let two_pi = T::PI() + T::PI();
    let mut v = if n.is_multiple_of(2) { T::one() } else { T::lit(2.0) };
    let mut k = if n.is_multiple_of(2) { 2 } else { 3 };
    while k <= n {
        v = v * two_pi / T::of(k);
        k += 2;
    }
    Ok(v)
}

pub fn ln_sphere_area<T: Real>(n: usize) -> Result<T> {
    if n == 0 {
        return domain("sphere_area requires n ≥ 1");
    }
    let h = T::of(n) * T::lit(0.5);
    Ok(T::LN_2() + h * T::PI().ln() - log_gamma_unchecked(h))
}

pub fn ln_ball_volume<T: Real>(n: usize) -> Result<T> {
    if n == 0 {
        return domain("ball_volume requires n ≥ 1");
    }
    let h = T::of(n) * T::lit(0.5);
    Ok(h * T::PI().ln() - log_gamma_unchecked(h + T::one()))
}

/// (2k − 3)!! for k ≥ 2.
pub fn odd_double_factorial(k: u32) -> Result<u128> {
    if k < 2 {
        return domain(format!("odd_double_factorial requires k ≥ 2, got {k}"));
    }
    let mut acc: u128 = 1;
    let mut j = 2 * k as u128 - 3;
    while j > 1 {
        acc = acc.checked_mul(j).ok_or_else(|| Error::Domain(format!("(2k−3)!! overflows 128 bits at k = {k}")))?;
        j -= 2;
    }
    Ok(acc)
}

/// Degree η, order γ and argument z = cosh r of the Legendre function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LegendreParams<T> {
    pub eta: T,
    pub gamma: T,
    pub z: T,
}

impl<T: Real> LegendreParams<T> {
    pub fn new(eta: T, gamma: T, z: T) -> Result<Self> {
        let p = Self { eta, gamma, z };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta > T::zero()) {
            return domain(format!("Legendre degree must be positive, got η = {}", self.eta));
        }
        if !(self.gamma >= T::zero()) {
            return domain(format!("Legendre order must be nonnegative, got γ = {}", self.gamma));
        }
        if !(self.z > T::one()) {
            return domain(format!("Legendre argument must exceed 1, got z = {}", self.z));
        }
        Ok(())
    }
}

/// ln of e^{−iπγ} Q_η^γ(z), computed as
/// 2^{−η−1} Γ(η+γ+1)/Γ(η+1) (z²−1)^{−γ/2} ∫₀^π (z + cos t)^{γ−η−1} (sin t)^{2η+1} dt.
///
/// Both endpoints are handled with t = u² and t = π − u², and the integrand is rescaled
/// by its maximum, so large degrees do not overflow.
pub fn ln_legendre_q<T: Real>(p: &LegendreParams<T>, quad: &QuadratureSpec<T>) -> Result<T> {
    p.validate()?;
    let LegendreParams { eta, gamma, z } = *p;
    let one = T::one();
    let two = T::lit(2.0);
    let zm1 = z - one;
    let pow_base = gamma - eta - one;
    let pow_sin = two * eta + one;
    let ln_integrand = |t: T| -> T {
        let half_cos = (t * T::lit(0.5)).cos();
        let base = zm1 + two * half_cos * half_cos;
        pow_base * base.ln() + pow_sin * t.sin().ln()
    };
    let pi = T::PI();
    let umax = (pi * T::lit(0.5)).sqrt();
    let left = integrate_log_breaks(|u: T| ln_integrand(u * u) + (two * u).ln(), &[T::zero(), umax], quad)?;
    let right = integrate_log_breaks(|u: T| ln_integrand(pi - u * u) + (two * u).ln(), &[T::zero(), umax], quad)?;
    let ln_int = crate::scalar::log_add_exp(left, right);
    let ln_pref = -(eta + one) * T::LN_2() + log_gamma_unchecked(eta + gamma + one)
        - log_gamma_unchecked(eta + one)
        - gamma * T::lit(0.5) * (zm1.ln() + (z + one).ln());
    Ok(ln_pref + ln_int)
}

pub fn legendre_q<T: Real>(p: &LegendreParams<T>, quad: &QuadratureSpec<T>) -> Result<T> {
    ln_legendre_q(p, quad).map(|v| v.exp())
}
