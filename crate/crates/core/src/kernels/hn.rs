use super::descent::abel_cosh;
use super::expr::RadialKernelExpr;
use crate::error::{domain, Result};
use crate::quadrature::{integrate, integrate_to_infinity, EndpointSubstitution, QuadratureSpec};
use crate::scalar::{ln_sinh, Real};

/// K₁(t, r) = (4πt)^{−1/2} e^{−r²/4t}.
pub fn k1<T: Real>(t: T, r: T) -> T {
    (T::lit(4.0) * T::PI() * t).sqrt().recip() * (-r * r / (T::lit(4.0) * t)).exp()
}

/// K_n for odd n ≥ 3 as an exact expression: j = (n−1)/2 applications of
/// e^{−(2i−1)t}(−(1/2π)(1/sinh r)∂_r) to K₁, total damping e^{−j²t}.
pub fn odd_heat_expr<T: Real>(n_odd: usize) -> Result<RadialKernelExpr<T>> {
    if n_odd < 3 || n_odd.is_multiple_of(2) {
        return domain(format!("odd_heat_expr needs an odd dimension ≥ 3, got {n_odd}"));
    }
    let pi = T::PI();
    let mut e = RadialKernelExpr::gaussian((T::lit(4.0) * pi).sqrt().recip(), T::one());
    let step = -(T::lit(2.0) * pi).recip();
    for i in 1..=(n_odd - 1) / 2 {
        e = e.apply_d(step).damp(T::of(2 * i - 1));
    }
    Ok(e)
}

/// Heat kernel K_n on H^n. Odd n use the exact expression; even n descend from n + 1 via
/// K_n(t, r) = √2 e^{(2n−1)t/4} ∫_r^∞ K_{n+1}(t, s) sinh s / √(cosh s − cosh r) ds.
#[derive(Debug, Clone)]
pub struct HnHeat<T> {
    pub n: usize,
    odd: RadialKernelExpr<T>,
}

impl<T: Real> HnHeat<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return domain(format!("hn_heat needs n ≥ 2, got {n}"));
        }
        let odd = odd_heat_expr(if n % 2 == 1 { n } else { n + 1 })?;
        Ok(Self { n, odd })
    }

    pub fn eval(&self, t: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
        if !(t > T::zero()) {
            return domain(format!("heat kernel needs t > 0, got t = {t}"));
        }
        let r = r.abs();
        if self.n % 2 == 1 {
            return Ok(self.odd.eval(t, r));
        }
        let nf = T::of(self.n);
        let pref = T::SQRT_2() * ((T::lit(2.0) * nf - T::one()) * t * T::lit(0.25)).exp();
        let span = T::one() + T::lit(2.0) * t.sqrt();
        Ok(pref * abel_cosh(|s| self.odd.eval(t, s), r, span, quad)?)
    }

    /// The odd expression used directly (n odd) or by descent (n even).
    pub fn expr(&self) -> &RadialKernelExpr<T> {
        &self.odd
    }
}

pub fn hn_heat<T: Real>(n: usize, t: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    HnHeat::new(n)?.eval(t, r, quad)
}

/// Even-dimensional kernel through the descent from n_even + 1.
pub fn even_heat<T: Real>(n_even: usize, t: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    if n_even < 2 || n_even % 2 == 1 {
        return domain(format!("even_heat needs an even dimension ≥ 2, got {n_even}"));
    }
    hn_heat(n_even, t, r, quad)
}

/// K₂(t, r) = √2 (4πt)^{−3/2} e^{−t/4} ∫_r^∞ s e^{−s²/4t} / √(cosh s − cosh r) ds, integrated
/// in s with the square-root substitution at the edge.
pub fn k2_direct<T: Real>(t: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    if !(t > T::zero()) {
        return domain(format!("heat kernel needs t > 0, got t = {t}"));
    }
    let r = r.abs();
    let half = T::lit(0.5);
    let four_t = T::lit(4.0) * t;
    let ln_gap = |s: T| T::LN_2() + ln_sinh((s + r) * half) + ln_sinh((s - r) * half);
    let f = |s: T| {
        if s <= r {
            return T::zero();
        }
        s * (-s * s / four_t - half * ln_gap(s)).exp()
    };
    let span = T::one() + T::lit(2.0) * t.sqrt();
    let sq = quad.with_substitution(EndpointSubstitution::Sqrt);
    let head = if r == T::zero() {
        // s/√(cosh s − 1) → √2 at the origin; only the far end needs care.
        integrate(|s: T| if s == T::zero() { T::SQRT_2() } else { f(s) }, T::zero(), span, quad)?
    } else {
        integrate(f, r, r + span, &sq)?
    };
    let tail = integrate_to_infinity(f, r + span, span, quad)?;
    let pref = T::SQRT_2() * (T::lit(4.0) * T::PI() * t).powf(T::lit(-1.5)) * (-t * T::lit(0.25)).exp();
    Ok(pref * (head + tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_normalisation() {
        let pi = std::f64::consts::PI;
        assert!((k1(1.0 / (4.0 * pi), 0.0) - 1.0).abs() < 1e-15);
        assert!((k1(1.0, 0.0) - (4.0 * pi).powf(-0.5)).abs() < 1e-16);
        let q = QuadratureSpec::default();
        let m: f64 = 2.0 * integrate_to_infinity(|s| k1(0.3, s), 0.0, 1.0, &q).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k3_closed_form() {
        let e = odd_heat_expr::<f64>(3).unwrap();
        let pi = std::f64::consts::PI;
        for &(t, r) in &[(1.0, 1.0), (0.3, 0.2), (2.0, 5.0), (0.5, 0.0)] {
            let ratio: f64 = if r == 0.0 { 1.0 } else { r / f64::sinh(r) };
            let k3 = f64::exp(-t) * (4.0 * pi * t).powf(-1.5) * ratio * f64::exp(-r * r / (4.0 * t));
            assert!((e.eval(t, r) - k3).abs() < 1e-13 * k3, "t={t} r={r}");
        }
    }

    #[test]
    fn k5_is_finite_difference_of_k3() {
        let k3 = odd_heat_expr::<f64>(3).unwrap();
        let k5 = odd_heat_expr::<f64>(5).unwrap();
        let (t, r, h) = (0.5_f64, 2.0_f64, 1e-5);
        let d = (k3.eval(t, r + h) - k3.eval(t, r - h)) / (2.0 * h);
        let fd = (-3.0 * t).exp() * (-1.0 / (2.0 * std::f64::consts::PI)) * d / r.sinh();
        let v = k5.eval(t, r);
        assert!((v - fd).abs() < 1e-6 * v);
        assert!(k5.eval(t, 1e-9).is_finite() && k5.eval(t, 0.0) > 0.0);
    }

    #[test]
    fn k2_routes_agree() {
        let q = QuadratureSpec::default();
        let v1: f64 = even_heat(2, 1.0, 1.0, &q).unwrap();
        let v2 = k2_direct(1.0, 1.0, &q).unwrap();
        assert!((v1 - v2).abs() < 1e-9 * v2);
    }

    #[test]
    fn far_field_decay() {
        let q = QuadratureSpec::default();
        for n in [2, 4, 6] {
            let v = hn_heat(n, 1.0, 20.0, &q).unwrap();
            assert!(v > 0.0 && v < 1e-12, "n={n} {v}");
        }
    }

    #[test]
    fn domain_errors() {
        let q = QuadratureSpec::<f64>::default();
        assert!(odd_heat_expr::<f64>(4).is_err());
        assert!(even_heat(3, 1.0, 1.0, &q).is_err());
        assert!(hn_heat(3, 0.0, 1.0, &q).is_err());
        assert!(hn_heat(1, 1.0, 1.0, &q).is_err());
    }
}
