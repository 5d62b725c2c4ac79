use super::descent::abel_sinh_half;
use super::expr::RadialKernelExpr;
use super::hn::odd_heat_expr;
use crate::error::{domain, Result};
use crate::quadrature::QuadratureSpec;
use crate::scalar::Real;

/// Heat kernel on complex hyperbolic space H_c^n,
/// K^c_n(t, r) = 2^{−2n} ∫_r^∞ sinh(s/2)/√(sinh²(s/2) − sinh²(r/2)) K_{2n+1}(t/4, s/2) ds.
#[derive(Debug, Clone)]
pub struct HcHeat<T> {
    pub n: usize,
    odd: RadialKernelExpr<T>,
}

impl<T: Real> HcHeat<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return domain(format!("hc_heat needs n ≥ 2, got {n}"));
        }
        Ok(Self { n, odd: odd_heat_expr(2 * n + 1)? })
    }

    pub fn eval(&self, t: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
        if !(t > T::zero()) {
            return domain(format!("heat kernel needs t > 0, got t = {t}"));
        }
        let half = T::lit(0.5);
        let tq = t * T::lit(0.25);
        let span = T::one() + T::lit(2.0) * t.sqrt();
        let v = abel_sinh_half(|s| self.odd.eval(tq, s * half), r.abs(), span, quad)?;
        Ok(T::lit(2.0).powi(-2 * self.n as i32) * v)
    }
}

pub fn hc_heat<T: Real>(n: usize, t: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    HcHeat::new(n)?.eval(t, r, quad)
}

/// Both sides of (−(1/sinh(s/2))∂_s)^n [(πt)^{−1/2} e^{−s²/4t}] = π^n e^{n²t/4} K_{2n+1}(t/4, s/2):
/// the left through the half-frequency term algebra, the right through the odd H^{2n+1} kernel.
pub fn hc_identity_sides<T: Real>(n: usize, t: T, s: T) -> Result<(T, T)> {
    if n < 1 || !(t > T::zero()) {
        return domain(format!("identity needs n ≥ 1 and t > 0, got n = {n}, t = {t}"));
    }
    let mut e = RadialKernelExpr::gaussian(T::PI().sqrt().recip(), T::lit(0.5));
    for _ in 0..n {
        e = e.apply_d(-T::one());
    }
    let lhs = e.eval(t, s);
    let nf = T::of(n);
    let rhs = T::PI().powi(n as i32)
        * (nf * nf * t * T::lit(0.25)).exp()
        * odd_heat_expr::<T>(2 * n + 1)?.eval(t * T::lit(0.25), s * T::lit(0.5));
    Ok((lhs, rhs))
}
