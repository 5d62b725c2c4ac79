use crate::error::{domain, Result};
use crate::quadrature::{integrate_breaks, QuadratureSpec};
use crate::scalar::Real;

/// Kernel of e^{tL_α} against v^{−α−1}dv:
/// (4πt)^{−1/2} (yv)^{α/2} e^{−α²t/4} e^{−ln²(v/y)/4t}.
pub fn sl_kernel<T: Real>(alpha: T, t: T, y: T, v: T) -> T {
    let l = (v / y).ln();
    let half = T::lit(0.5);
    let four_t = T::lit(4.0) * t;
    let ln_k = -half * (T::PI() * four_t).ln() + alpha * half * (y.ln() + v.ln())
        - alpha * alpha * t / T::lit(4.0)
        - l * l / four_t;
    ln_k.exp()
}

/// e^{tL_α} f (y) = ∫₀^∞ K_α(t, y, v) f(v) v^{−α−1} dv.
///
/// With v = y e^u the weight becomes the Gaussian (4πt)^{−1/2} e^{−(u+αt)²/4t}, integrated
/// over 16√t on either side of its centre.
pub fn sl_apply<T: Real, F: Fn(T) -> T>(alpha: T, t: T, f: F, y: T, quad: &QuadratureSpec<T>) -> Result<T> {
    sl_apply_log(alpha, t, |u: T| f(y * u.exp()), y, quad)
}

/// e^{tL_α} applied to v ↦ g(ln(v/y)) and evaluated at y; g takes the log-ratio directly so
/// that large drifts never pass through e^u.
pub fn sl_apply_log<T: Real, G: Fn(T) -> T>(alpha: T, t: T, g: G, y: T, quad: &QuadratureSpec<T>) -> Result<T> {
    if !(t > T::zero() && y > T::zero()) {
        return domain(format!("sl_apply needs t > 0 and y > 0, got t = {t}, y = {y}"));
    }
    let st = t.sqrt();
    let centre = -alpha * t;
    let four_t = T::lit(4.0) * t;
    let norm = (T::PI() * four_t).sqrt().recip();
    let breaks: Vec<T> = [-16.0, -8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0, 16.0]
        .iter()
        .map(|&k| centre + T::lit(k) * st)
        .collect();
    integrate_breaks(
        |u: T| {
            let d = u - centre;
            norm * (-d * d / four_t).exp() * g(u)
        },
        &breaks,
        quad,
    )
}
