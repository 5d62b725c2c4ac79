//! Adaptive Gauss–Kronrod quadrature (7/15 point pair) with endpoint substitutions,
//! semi-infinite ranges and log-scaled integrands.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Change of variables applied on every integration interval before the rule runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum EndpointSubstitution {
    #[default]
    None,
    /// `x = a + h u²` on the left half and `x = b − h u²` on the right half; removes
    /// square-root behaviour at either endpoint.
    Sqrt,
    /// `x = a + (b − a)(1 − cos πu)/2`; flattens the integrand at both endpoints.
    Sin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_subdivisions: usize,
    #[serde(default)]
    pub endpoint_substitution: EndpointSubstitution,
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-10).max(T::lit(100.0) * T::epsilon()),
            abs_tol: T::min_positive_value(),
            max_subdivisions: 2000,
            endpoint_substitution: EndpointSubstitution::None,
        }
    }
}

impl<T: Real> QuadratureSpec<T> {
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol.max(T::lit(50.0) * T::epsilon());
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: T) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_substitution(mut self, s: EndpointSubstitution) -> Self {
        self.endpoint_substitution = s;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero() && self.abs_tol > T::zero()) || self.max_subdivisions == 0 {
            return Err(Error::Config(format!(
                "quadrature tolerances must be positive (rel {}, abs {}, max_subdivisions {})",
                self.rel_tol, self.abs_tol, self.max_subdivisions
            )));
        }
        Ok(())
    }

    fn tolerance(&self, estimate: T) -> T {
        self.abs_tol.max(self.rel_tol * estimate.abs())
    }
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    resabs: T,
}

fn gk15<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> Panel<T> {
    let half = T::lit(0.5);
    let c = half * (a + b);
    let h = half * (b - a);
    let fc = f(c);
    let mut rk = fc * T::lit(WGK[7]);
    let mut rg = fc * T::lit(WG[3]);
    let mut resabs = rk.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = h * T::lit(XGK[j]);
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        rk = rk + w * (f1 + f2);
        resabs = resabs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            rg = rg + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = rk * half;
    let mut resasc = T::lit(WGK[7]) * (fc - mean).abs();
    for j in 0..7 {
        resasc = resasc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let habs = h.abs();
    let value = rk * h;
    let resabs = resabs * habs;
    let resasc = resasc * habs;
    let mut error = ((rk - rg) * h).abs();
    if resasc != T::zero() && error != T::zero() {
        error = resasc * T::one().min((T::lit(200.0) * error / resasc).powf(T::lit(1.5)));
    }
    let floor = T::lit(50.0) * T::epsilon() * resabs;
    if floor > error {
        error = floor;
    }
    Panel { a, b, value, error, resabs }
}

fn adaptive<T: Real, F: FnMut(T) -> T>(f: &mut F, breaks: &[T], spec: &QuadratureSpec<T>) -> Result<T> {
    spec.validate()?;
    let mut panels: Vec<Panel<T>> = breaks.windows(2).filter(|w| w[1] != w[0]).map(|w| gk15(f, w[0], w[1])).collect();
    if panels.is_empty() {
        return Ok(T::zero());
    }
    let mut frozen = vec![false; panels.len()];
    loop {
        let total: T = panels.iter().map(|p| p.value).sum();
        let err: T = panels.iter().map(|p| p.error).sum();
        let resabs: T = panels.iter().map(|p| p.resabs).sum();
        if !total.is_finite() || !err.is_finite() {
            return Err(quad_error(breaks, total, err, "integrand produced a non-finite value"));
        }
        if err <= spec.tolerance(total) || err <= T::lit(100.0) * T::epsilon() * resabs {
            return Ok(total);
        }
        if panels.len() >= spec.max_subdivisions {
            return Err(quad_error(breaks, total, err, "subdivision limit reached"));
        }
        let mut worst = None;
        for (i, p) in panels.iter().enumerate() {
            if frozen[i] {
                continue;
            }
            if worst.is_none_or(|w: usize| p.error > panels[w].error) {
                worst = Some(i);
            }
        }
        let Some(i) = worst else {
            return Err(quad_error(breaks, total, err, "roundoff prevents further refinement"));
        };
        let Panel { a, b, .. } = panels[i];
        let m = T::lit(0.5) * (a + b);
        let scale = a.abs().max(b.abs()).max(T::min_positive_value());
        if (b - a).abs() <= T::lit(1000.0) * T::epsilon() * scale {
            frozen[i] = true;
            continue;
        }
        panels[i] = gk15(f, a, m);
        panels.push(gk15(f, m, b));
        frozen.push(false);
    }
}

fn quad_error<T: Real>(breaks: &[T], estimate: T, error: T, context: &str) -> Error {
    Error::Quadrature {
        a: breaks[0].f64(),
        b: breaks[breaks.len() - 1].f64(),
        estimate: estimate.f64(),
        error: error.f64(),
        context: context.to_string(),
    }
}

/// ∫ f over the piecewise interval defined by `breaks` (ascending), substitution applied per piece.
pub fn integrate_breaks<T: Real, F: FnMut(T) -> T>(mut f: F, breaks: &[T], spec: &QuadratureSpec<T>) -> Result<T> {
    if breaks.len() < 2 {
        return Ok(T::zero());
    }
    let half = T::lit(0.5);
    match spec.endpoint_substitution {
        EndpointSubstitution::None => adaptive(&mut f, breaks, spec),
        EndpointSubstitution::Sqrt => {
            let mut total = T::zero();
            for w in breaks.windows(2) {
                let (a, b) = (w[0], w[1]);
                let h = half * (b - a);
                let two_h = h + h;
                let mut left = |u: T| two_h * u * f(a + h * u * u);
                total = total + adaptive(&mut left, &[T::zero(), T::one()], spec)?;
                let mut right = |u: T| two_h * u * f(b - h * u * u);
                total = total + adaptive(&mut right, &[T::zero(), T::one()], spec)?;
            }
            Ok(total)
        }
        EndpointSubstitution::Sin => {
            let mut total = T::zero();
            for w in breaks.windows(2) {
                let (a, b) = (w[0], w[1]);
                let len = b - a;
                let pi = T::PI();
                let mut g = |u: T| {
                    let x = a + len * half * (T::one() - (pi * u).cos());
                    len * half * pi * (pi * u).sin() * f(x)
                };
                total = total + adaptive(&mut g, &[T::zero(), T::one()], spec)?;
            }
            Ok(total)
        }
    }
}

/// ∫_a^b f.
pub fn integrate<T: Real, F: FnMut(T) -> T>(f: F, a: T, b: T, spec: &QuadratureSpec<T>) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    if b < a {
        return integrate_breaks(f, &[b, a], spec).map(|v| -v);
    }
    integrate_breaks(f, &[a, b], spec)
}

/// ∫_a^∞ f: panels of doubling width starting at `width`, stopping once two consecutive
/// panels no longer change the running total within tolerance.
pub fn integrate_to_infinity<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    width: T,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    let plain = QuadratureSpec { endpoint_substitution: EndpointSubstitution::None, ..*spec };
    let mut total = integrate_breaks(&mut f, &[a, a + width], spec)?;
    let mut lo = a + width;
    let mut w = width;
    let mut quiet = 0;
    for _ in 0..80 {
        let piece = integrate_breaks(&mut f, &[lo, lo + w], &plain)?;
        total = total + piece;
        lo = lo + w;
        w = w + w;
        if piece.abs() <= spec.tolerance(total) {
            quiet += 1;
            if quiet == 2 {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Quadrature {
        a: a.f64(),
        b: f64::INFINITY,
        estimate: total.f64(),
        error: f64::NAN,
        context: "tail did not settle".into(),
    })
}

/// Returns ln ∫_a^b exp(lnf): the integrand is rescaled by its sampled maximum so that
/// values far outside the floating range still integrate.
pub fn integrate_log<T: Real, F: Fn(T) -> T>(lnf: F, a: T, b: T, spec: &QuadratureSpec<T>) -> Result<T> {
    integrate_log_breaks(lnf, &[a, b], spec)
}

/// As [`integrate_log`] over consecutive pieces.
pub fn integrate_log_breaks<T: Real, F: Fn(T) -> T>(lnf: F, breaks: &[T], spec: &QuadratureSpec<T>) -> Result<T> {
    const SAMPLES: usize = 256;
    let a = breaks[0];
    let b = breaks[breaks.len() - 1];
    if !(b > a) {
        return Ok(T::neg_infinity());
    }
    let h = (b - a) / T::of(SAMPLES);
    let mut peak = T::neg_infinity();
    let mut arg = a;
    for k in 0..SAMPLES {
        let x = a + h * (T::of(k) + T::lit(0.5));
        let v = lnf(x);
        if v > peak {
            peak = v;
            arg = x;
        }
    }
    for &x in breaks {
        let v = lnf(x);
        if v.is_finite() && v > peak {
            peak = v;
            arg = x;
        }
    }
    if peak == T::neg_infinity() {
        return Ok(peak);
    }
    if !peak.is_finite() {
        return Err(Error::Quadrature {
            a: a.f64(),
            b: b.f64(),
            estimate: peak.f64(),
            error: f64::NAN,
            context: "log-integrand is not finite".into(),
        });
    }
    let mut pts: Vec<T> = breaks.to_vec();
    let coarse = 64;
    let hc = (b - a) / T::of(coarse);
    for k in 1..coarse {
        pts.push(a + hc * T::of(k));
    }
    for d in [-1.0, 1.0] {
        let x = arg + h * T::lit(d);
        if x > a && x < b {
            pts.push(x);
        }
    }
    if arg > a && arg < b {
        pts.push(arg);
    }
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup();
    let val = integrate_breaks(|x| (lnf(x) - peak).exp(), &pts, spec)?;
    Ok(peak + val.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_trig() {
        let q = QuadratureSpec::<f64>::default();
        let v = integrate(|x| x * x, 0.0, 3.0, &q).unwrap();
        assert!((v - 9.0).abs() < 1e-13);
        let v = integrate(|x: f64| x.sin(), 0.0, std::f64::consts::PI, &q).unwrap();
        assert!((v - 2.0).abs() < 1e-13);
    }

    #[test]
    fn endpoint_substitutions() {
        for s in [EndpointSubstitution::Sqrt, EndpointSubstitution::Sin] {
            let q = QuadratureSpec::<f64>::default().with_substitution(s);
            let v = integrate(|x: f64| (x * (1.0 - x)).sqrt(), 0.0, 1.0, &q).unwrap();
            assert!((v - std::f64::consts::PI / 8.0).abs() < 1e-11, "{s:?} {v}");
            let v = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &q).unwrap();
            assert!((v - 2.0).abs() < 1e-10, "{s:?} {v}");
        }
    }

    #[test]
    fn semi_infinite() {
        let q = QuadratureSpec::<f64>::default();
        let v = integrate_to_infinity(|x: f64| (-x).exp(), 0.0, 1.0, &q).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let v = integrate_to_infinity(|x: f64| 1.0 / (1.0 + x * x), 0.0, 1.0, &q.with_rel_tol(1e-8));
        assert!(v.is_err() || (v.unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
    }

    #[test]
    fn log_scaled_gaussian_far_outside_range() {
        let q = QuadratureSpec::<f64>::default();
        let v = integrate_log(|x: f64| 5000.0 - (x - 3.0).powi(2), -10.0, 10.0, &q).unwrap();
        let expect = 5000.0 + std::f64::consts::PI.sqrt().ln();
        assert!((v - expect).abs() < 1e-10);
    }

    #[test]
    fn nonconvergence_is_reported() {
        let q = QuadratureSpec { max_subdivisions: 3, ..QuadratureSpec::<f64>::default() };
        let r = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &q);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }

    #[test]
    fn invalid_spec_rejected() {
        let q = QuadratureSpec { rel_tol: 0.0, ..QuadratureSpec::<f64>::default() };
        assert!(integrate(|x: f64| x, 0.0, 1.0, &q).is_err());
    }

    #[test]
    fn single_precision() {
        let q = QuadratureSpec::<f32>::default();
        let v = integrate(|x: f32| x.exp(), 0.0, 1.0, &q).unwrap();
        assert!((v - (1f32.exp() - 1.0)).abs() < 1e-5);
    }
}
