//! Abel-type integrals ∫_r^∞ g(s) w(s, r) ds with an inverse square-root edge at s = r.

use crate::error::Result;
use crate::quadrature::{integrate, integrate_to_infinity, QuadratureSpec};
use crate::scalar::{acosh1p, ln_sinh, Real};

fn ln_sinh_diff<T: Real>(s: T, r: T) -> T {
    // ln(2 sinh((s+r)/2) sinh((s−r)/2)) = ln(cosh s − cosh r)
    let half = T::lit(0.5);
    T::LN_2() + ln_sinh((s + r) * half) + ln_sinh((s - r) * half)
}

/// ∫_r^∞ g(s) sinh s / √(cosh s − cosh r) ds.
///
/// Near the edge cosh s − cosh r = u² turns the integrand into 2 g(s(u)); past s = r + span
/// the s-form is used with panels of doubling width.
pub fn abel_cosh<T: Real, G: Fn(T) -> T>(g: G, r: T, span: T, quad: &QuadratureSpec<T>) -> Result<T> {
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let c0 = two * (r * half).sinh().powi(2);
    let s1 = r + span;
    let u1 = (ln_sinh_diff(s1, r) * half).exp();
    let head = integrate(|u: T| two * g(acosh1p(c0 + u * u)), T::zero(), u1, quad)?;
    let tail = integrate_to_infinity(
        |s: T| {
            let w = (ln_sinh(s) - half * ln_sinh_diff(s, r)).exp();
            g(s) * w
        },
        s1,
        span,
        quad,
    )?;
    Ok(head + tail)
}

/// ∫_r^∞ g(s) sinh(s/2) / √(sinh²(s/2) − sinh²(r/2)) ds.
///
/// Near the edge sinh²(s/2) − sinh²(r/2) = u² gives 2 g(s(u)) / √(1 + u² + sinh²(r/2)).
pub fn abel_sinh_half<T: Real, G: Fn(T) -> T>(g: G, r: T, span: T, quad: &QuadratureSpec<T>) -> Result<T> {
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let sh = (r * half).sinh();
    let sh2 = sh * sh;
    let s1 = r + span;
    // sinh²A − sinh²B = sinh(A+B) sinh(A−B)
    let ln_gap = |s: T| ln_sinh((s + r) * half) + ln_sinh((s - r) * half);
    let u1 = (ln_gap(s1) * half).exp();
    let head = integrate(
        |u: T| {
            let w2 = u * u + sh2;
            two * g(two * w2.sqrt().asinh()) / (T::one() + w2).sqrt()
        },
        T::zero(),
        u1,
        quad,
    )?;
    let tail = integrate_to_infinity(
        |s: T| {
            let w = (ln_sinh(s * half) - half * ln_gap(s)).exp();
            g(s) * w
        },
        s1,
        span,
        quad,
    )?;
    Ok(head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abel_cosh_known_transform() {
        // ∫_r^∞ e^{−s}·sinh s/√(cosh s − cosh r) ds against a plain sqrt-substituted quadrature.
        let q = QuadratureSpec::<f64>::default();
        let r = 0.7;
        let v = abel_cosh(|s: f64| (-2.0 * s).exp(), r, 1.0, &q).unwrap();
        let sq = QuadratureSpec::default().with_substitution(crate::quadrature::EndpointSubstitution::Sqrt);
        let f = |s: f64| (-2.0 * s).exp() * s.sinh() / (s.cosh() - r.cosh()).sqrt();
        let head = integrate(f, r, 30.0, &sq).unwrap();
        assert!((v - head).abs() < 1e-9 * v, "{v} {head}");
    }

    #[test]
    fn abel_sinh_half_matches_s_form() {
        let q = QuadratureSpec::<f64>::default();
        let r = 1.2;
        let g = |s: f64| (-s * s / 3.0).exp();
        let v = abel_sinh_half(g, r, 2.0, &q).unwrap();
        let sq = QuadratureSpec::default().with_substitution(crate::quadrature::EndpointSubstitution::Sqrt);
        let f = |s: f64| g(s) * (s / 2.0).sinh() / ((s / 2.0).sinh().powi(2) - (r / 2.0).sinh().powi(2)).sqrt();
        let o = integrate(f, r, 20.0, &sq).unwrap();
        assert!((v - o).abs() < 1e-9 * v, "{v} {o}");
    }
}
