use serde::{Deserialize, Serialize};

use super::htype::{htype_dilate, htype_inv, htype_mul, HTypeDescriptor, HTypePoint};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_log, QuadratureSpec};
use crate::scalar::{acosh1p, Real};
use crate::special_fn::{ln_ball_volume, ln_sphere_area, log_gamma_unchecked};

/// A point (a, (x, ϱ)) of R⁺ × N with N an H-type group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ANPoint<T> {
    pub a: T,
    pub n_part: HTypePoint<T>,
}

impl<T: Real> ANPoint<T> {
    pub fn new(a: T, n_part: HTypePoint<T>) -> Result<Self> {
        if !(a > T::zero()) || !a.is_finite() {
            return domain(format!("abelian coordinate must be positive, got a = {a}"));
        }
        Ok(Self { a, n_part })
    }
}

/// Open ball with center in an AN group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ANBall<T> {
    pub center: ANPoint<T>,
    pub radius: T,
}

pub fn an_identity<T: Real>(d: &HTypeDescriptor<T>) -> ANPoint<T> {
    ANPoint { a: T::one(), n_part: HTypePoint::zero(d) }
}

/// (a, n)·(h, n') = (ah, n·δ_{√a}(n')).
pub fn an_mul<T: Real>(d: &HTypeDescriptor<T>, g: &ANPoint<T>, h: &ANPoint<T>) -> Result<ANPoint<T>> {
    let moved = htype_dilate(&h.n_part, g.a.sqrt());
    Ok(ANPoint { a: g.a * h.a, n_part: htype_mul(d, &g.n_part, &moved)? })
}

/// (a, n)⁻¹ = (a⁻¹, δ_{a^{−1/2}}(n⁻¹)).
pub fn an_inv<T: Real>(g: &ANPoint<T>) -> ANPoint<T> {
    ANPoint { a: g.a.recip(), n_part: htype_dilate(&htype_inv(&g.n_part), g.a.sqrt().recip()) }
}

/// d(g, h) = d(g⁻¹h, e) with
/// cosh d((a, (x, ϱ)), e) = [(|x|²/4)² + |ϱ|² + 1 + a² + (|x|²/2)(1 + a)] / (2a);
/// |ϱ| is the Euclidean norm in R^m.
pub fn an_distance<T: Real>(d: &HTypeDescriptor<T>, g: &ANPoint<T>, h: &ANPoint<T>) -> Result<T> {
    let xi = an_mul(d, &an_inv(g), h)?;
    let a = xi.a;
    let x2 = xi.n_part.x_norm_sq();
    let r2 = xi.n_part.rho_norm_sq();
    let q = x2 * T::lit(0.25);
    let excess = q * q + r2 + (T::one() - a) * (T::one() - a) + x2 * T::lit(0.5) * (T::one() + a);
    Ok(acosh1p(excess / (T::lit(2.0) * a)))
}

/// Literal ball description: e^{−r} < h/a < e^{r} and
/// |x−w|²(1 + h/a)/(2a) + |x−w|⁴/(16a²) + |u/a − ϱ/a − ⟨x,Uw⟩/(2a)|² < 2(h/a)cosh r − (1 + h²/a²).
pub fn ball_contains<T: Real>(d: &HTypeDescriptor<T>, ball: &ANBall<T>, xi: &ANPoint<T>) -> Result<bool> {
    let g = &ball.center;
    d.check_point(&g.n_part)?;
    d.check_point(&xi.n_part)?;
    let r = ball.radius;
    let s = xi.a / g.a;
    if !(s > (-r).exp() && s < r.exp()) {
        return Ok(false);
    }
    let a = g.a;
    let dx2: T = g.n_part.x.iter().zip(&xi.n_part.x).map(|(p, q)| (*p - *q) * (*p - *q)).sum();
    let two = T::lit(2.0);
    let mut center_term = T::zero();
    for j in 0..d.m {
        let c = xi.n_part.rho[j] / a - g.n_part.rho[j] / a - d.form(j, &g.n_part.x, &xi.n_part.x) / (two * a);
        center_term = center_term + c * c;
    }
    let lhs = dx2 / (two * a) * (T::one() + s) + dx2 * dx2 / (T::lit(16.0) * a * a) + center_term;
    Ok(lhs < two * s * r.cosh() - (T::one() + s * s))
}

/// κ(a, h, r) = 2(h/a)cosh r − (1 + h²/a²) on the slab e^{−r} < h/a < e^{r}.
pub fn kappa<T: Real>(a: T, h: T, r: T) -> Result<T> {
    if !(a > T::zero() && h > T::zero() && r > T::zero()) {
        return domain(format!("kappa needs positive a, h, r; got ({a}, {h}, {r})"));
    }
    let s = h / a;
    if !(s > (-r).exp() && s < r.exp()) {
        return domain(format!("kappa: h/a = {s} outside (e^-r, e^r) for r = {r}"));
    }
    Ok(T::lit(2.0) * s * r.cosh() - (T::one() + s * s))
}

/// a^n · Vol{(w, u) ∈ R^{2(n−1)} × R : (|w|²/2)(1 + h/a) + |w|⁴/16 + u² < κ}, where
/// 2(n−1) is the horizontal dimension of `d` (which must have m = 1).
///
/// With c₀ = 1 + h/a and K = κ + c₀² the u-extent is 2√(K − (|w|²/4 + c₀)²); the radial
/// variable is moved to θ through |w|²/4 + c₀ = √K sin θ.
pub fn region_volume<T: Real>(d: &HTypeDescriptor<T>, a: T, h: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    ln_region_volume(d, a, h, r, quad).map(|v| v.exp())
}

fn ln_region_volume<T: Real>(d: &HTypeDescriptor<T>, a: T, h: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    if d.m != 1 {
        return Err(Error::InvalidDescriptor(format!("region_volume needs m = 1, got m = {}", d.m)));
    }
    let k = kappa(a, h, r)?;
    let dim = d.two_n;
    let n = dim / 2 + 1;
    let c0 = T::one() + h / a;
    let big_k = k + c0 * c0;
    let sk = big_k.sqrt();
    let theta0 = (c0 / sk).asin();
    let pw = T::of(dim / 2 - 1);
    let four = T::lit(4.0);
    let ln_f = |th: T| {
        let c = th.cos();
        // √K sin θ − c₀ = √K (sin θ − sin θ₀) without cancellation
        let base = four * sk * T::lit(2.0) * ((th + theta0) * T::lit(0.5)).cos() * ((th - theta0) * T::lit(0.5)).sin();
        let lb = if pw == T::zero() { T::zero() } else { pw * base.ln() };
        (four * big_k * c * c).ln() + lb
    };
    let half_pi = T::FRAC_PI_2();
    let ln_int = integrate_log(ln_f, theta0, half_pi, quad)?;
    Ok(T::of(n) * a.ln() + ln_sphere_area::<T>(dim)? + ln_int)
}

/// Γ(n+1)/(2√π Γ(n+½)) 2^{2n} Ω_{2n} a^n [√(κ + c₀²) − c₀]^{n−½} [κ + c₀²]^{¼}, c₀ = 1 + h/a.
pub fn region_volume_bound<T: Real>(d: &HTypeDescriptor<T>, a: T, h: T, r: T) -> Result<T> {
    let k = kappa(a, h, r)?;
    let n = d.two_n / 2 + 1;
    let nf = T::of(n);
    let half = T::lit(0.5);
    let c0 = T::one() + h / a;
    let big_k = k + c0 * c0;
    let ln = log_gamma_unchecked(nf + T::one()) - log_gamma_unchecked(nf + half) - T::LN_2() - half * T::PI().ln()
        + T::of(2 * n) * T::LN_2()
        + ln_ball_volume::<T>(2 * n)?
        + nf * a.ln()
        + (nf - half) * (big_k.sqrt() - c0).ln()
        + T::lit(0.25) * big_k.ln();
    Ok(ln.exp())
}
