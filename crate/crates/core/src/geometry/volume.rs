use crate::error::{domain, Result};
use crate::quadrature::{integrate_log, QuadratureSpec};
use crate::scalar::{ln_cosh, ln_sinh, Real};
use crate::special_fn::{ln_ball_volume, ln_sphere_area};

fn check(n: usize, r: f64) -> Result<()> {
    if n < 2 {
        return domain(format!("volume needs n ≥ 2, got {n}"));
    }
    if !(r > 0.0) {
        return domain(format!("volume needs r > 0, got {r}"));
    }
    Ok(())
}

/// ln V(r) with V(r) = ω_{n−1} ∫₀^r sinh^{n−1}s ds, the volume of a ball of radius r in H^n.
pub fn ln_hn_volume<T: Real>(n: usize, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    check(n, r.f64())?;
    let k = T::of(n - 1);
    let ln_int = integrate_log(|s: T| k * ln_sinh(s), T::zero(), r, quad)?;
    Ok(ln_sphere_area::<T>(n)? + ln_int)
}

pub fn hn_volume<T: Real>(n: usize, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    ln_hn_volume(n, r, quad).map(|v| v.exp())
}

/// ln Ψ(r) with Ψ(r) = sinh^{n−1}r · min(1, sinh r).
pub fn ln_psi<T: Real>(n: usize, r: T) -> T {
    let ls = ln_sinh(r);
    T::of(n - 1) * ls + ls.min(T::zero())
}

pub fn psi<T: Real>(n: usize, r: T) -> T {
    ln_psi(n, r).exp()
}

/// V(r) / (Ω_n Ψ(r)).
pub fn hn_volume_sandwich<T: Real>(n: usize, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    Ok((ln_hn_volume(n, r, quad)? - ln_ball_volume::<T>(n)? - ln_psi(n, r)).exp())
}

/// ln V_c(r) = ln[2^{2n} Ω_{2n} sinh^{2n}(r/2)], ball volume in complex hyperbolic space.
pub fn ln_vc_volume<T: Real>(n: usize, r: T) -> Result<T> {
    check(n, r.f64())?;
    let d = T::of(2 * n);
    Ok(d * T::LN_2() + ln_ball_volume::<T>(2 * n)? + d * ln_sinh(r * T::lit(0.5)))
}

pub fn vc_volume<T: Real>(n: usize, r: T) -> Result<T> {
    ln_vc_volume(n, r).map(|v| v.exp())
}

/// Radial density 2^{2n−1} ω_{2n−1} sinh^{2n−1}(r/2) cosh(r/2) of the complex hyperbolic volume.
pub fn vc_volume_density<T: Real>(n: usize, r: T) -> Result<T> {
    an_volume_density(2 * (n - 1), 1, r)
}

fn an_dim(two_n: usize, m: usize) -> Result<usize> {
    if two_n == 0 || !two_n.is_multiple_of(2) || m == 0 {
        return domain(format!("invalid H-type dimensions (2n, m) = ({two_n}, {m})"));
    }
    Ok(two_n + m)
}

/// Radial density 2^{2n+m} ω_{2n+m} sinh^{2n+m}(r/2) cosh^m(r/2) of the AN volume; `two_n` is 2n.
pub fn an_volume_density<T: Real>(two_n: usize, m: usize, r: T) -> Result<T> {
    let d = an_dim(two_n, m)?;
    let half = r * T::lit(0.5);
    let ln = T::of(d) * T::LN_2() + ln_sphere_area::<T>(d + 1)? + T::of(d) * ln_sinh(half) + T::of(m) * ln_cosh(half);
    Ok(ln.exp())
}

/// ln of 2^{2n+m} ω_{2n+m} ∫₀^r sinh^{2n+m}(s/2) cosh^m(s/2) ds.
pub fn ln_an_volume<T: Real>(two_n: usize, m: usize, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    let d = an_dim(two_n, m)?;
    if !(r > T::zero()) {
        return domain(format!("an_volume needs r > 0, got {r}"));
    }
    let (df, mf) = (T::of(d), T::of(m));
    let half = T::lit(0.5);
    let ln_int = integrate_log(|s: T| df * ln_sinh(s * half) + mf * ln_cosh(s * half), T::zero(), r, quad)?;
    Ok(df * T::LN_2() + ln_sphere_area::<T>(d + 1)? + ln_int)
}

pub fn an_volume<T: Real>(two_n: usize, m: usize, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    ln_an_volume(two_n, m, r, quad).map(|v| v.exp())
}

/// V(r) / (2^{2n+m+1} Ω_{2n+m+1} sinh^{2n+m+1}(r/2) cosh^{m−1}(r/2)).
pub fn an_volume_sandwich<T: Real>(two_n: usize, m: usize, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    let d = an_dim(two_n, m)?;
    let half = r * T::lit(0.5);
    let ln_norm = T::of(d + 1) * T::LN_2()
        + ln_ball_volume::<T>(d + 1)?
        + T::of(d + 1) * ln_sinh(half)
        + (T::of(m) - T::one()) * ln_cosh(half);
    Ok((ln_an_volume(two_n, m, r, quad)? - ln_norm).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::ball_volume;

    #[test]
    fn closed_forms_small_dimensions() {
        let q = QuadratureSpec::default();
        let pi = std::f64::consts::PI;
        let v2 = hn_volume(2, 1.0_f64, &q).unwrap();
        assert!((v2 - 2.0 * pi * (1f64.cosh() - 1.0)).abs() < 1e-12);
        let v3 = hn_volume(3, 1.0_f64, &q).unwrap();
        assert!((v3 - pi * (2f64.sinh() - 2.0)).abs() < 1e-12);
    }

    #[test]
    fn euclidean_limits() {
        let q = QuadratureSpec::default();
        for n in [2, 5, 12] {
            let r = 1e-4_f64;
            let ratio = hn_volume(n, r, &q).unwrap() / (ball_volume::<f64>(n).unwrap() * r.powi(n as i32));
            assert!((ratio - 1.0).abs() < 1e-6, "n={n}");
            let ratio = vc_volume(n, r).unwrap() / (ball_volume::<f64>(2 * n).unwrap() * r.powi(2 * n as i32));
            assert!((ratio - 1.0).abs() < 1e-6);
        }
        let r = 1e-4_f64;
        let ratio = an_volume(2, 1, r, &q).unwrap() / (ball_volume::<f64>(4).unwrap() * r.powi(4));
        assert!((ratio - 1.0).abs() < 1e-6);
        assert!((hn_volume_sandwich(10, 0.1_f64, &q).unwrap() - 1.0).abs() < 0.05);
    }

    #[test]
    fn large_dimension_stays_finite() {
        let q = QuadratureSpec::default();
        let v = ln_hn_volume(2200, 10.0_f64, &q).unwrap();
        assert!(v.is_finite() && v > 10000.0);
        let v = ln_hn_volume(2200, 1e-3_f64, &q).unwrap();
        assert!(v.is_finite() && v < -10000.0);
    }

    #[test]
    fn vc_matches_integrated_density() {
        let q = QuadratureSpec::default();
        for n in [2, 3, 5] {
            let r = 1.7_f64;
            let integ = crate::quadrature::integrate(|s| vc_volume_density(n, s).unwrap(), 0.0, r, &q).unwrap();
            let closed = vc_volume(n, r).unwrap();
            assert!((integ - closed).abs() < 1e-10 * closed, "n={n}");
            let an = an_volume(2 * (n - 1), 1, r, &q).unwrap();
            assert!((an - closed).abs() < 1e-10 * closed, "n={n}");
        }
    }

    #[test]
    fn vc_derivative_is_density() {
        let h = 1e-5_f64;
        for r in [0.3, 1.0, 2.5] {
            let fd = (vc_volume(3, r + h).unwrap() - vc_volume(3, r - h).unwrap()) / (2.0 * h);
            let dens = vc_volume_density(3, r).unwrap();
            assert!((fd - dens).abs() < 1e-7 * dens);
        }
        let pi = std::f64::consts::PI;
        let v = vc_volume(2, 2.0_f64).unwrap();
        assert!((v - 8.0 * pi * pi * 1f64.sinh().powi(4)).abs() < 1e-12 * v);
    }

    #[test]
    fn an_volume_against_trapezoid() {
        let q = QuadratureSpec::default();
        let r = 2.0_f64;
        let n = 200_000;
        let h = r / n as f64;
        let f = |s: f64| an_volume_density(2, 1, s).unwrap();
        let mut s = 0.5 * (f(0.0) + f(r));
        for k in 1..n {
            s += f(k as f64 * h);
        }
        let trap = s * h;
        let v = an_volume(2, 1, r, &q).unwrap();
        assert!((v - trap).abs() < 1e-8 * v);
    }

    #[test]
    fn rejects_bad_dimensions() {
        let q = QuadratureSpec::default();
        assert!(hn_volume(1, 1.0_f64, &q).is_err());
        assert!(an_volume(3, 1, 1.0_f64, &q).is_err());
        assert!(hn_volume(3, 0.0_f64, &q).is_err());
    }
}
