use serde::{Deserialize, Serialize};

use super::descent::abel_cosh;
use super::expr::RadialKernelExpr;
use super::hn::odd_heat_expr;
use crate::error::{domain, Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::scalar::Real;

/// Integer coefficients C(k, j), 1 ≤ j ≤ k ≤ k_max, of
/// L^k D^n = (2 cosh(r/2))^{−k} Σ_j C(k, j) (2 cosh(r/2))^{j−k} D^{n+j},
/// where D = −(1/sinh(r/2))∂_r and L = −(1/sinh r)∂_r.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CkjTable {
    pub k_max: usize,
    rows: Vec<Vec<u128>>,
}

impl CkjTable {
    /// C(k, j); zero outside 1 ≤ j ≤ k.
    pub fn get(&self, k: usize, j: usize) -> u128 {
        if k == 0 || k > self.k_max || j == 0 || j > k {
            return 0;
        }
        self.rows[k - 1][j - 1]
    }

    pub fn row(&self, k: usize) -> &[u128] {
        &self.rows[k - 1]
    }
}

/// Builds the table with C(1,1) = 1 and C(k+1, j) = (2k − j) C(k, j) + C(k, j − 1).
pub fn ckj_table(k_max: usize) -> Result<CkjTable> {
    if k_max < 1 {
        return domain("ckj_table needs k_max ≥ 1");
    }
    let mut rows: Vec<Vec<u128>> = vec![vec![1]];
    for k in 1..k_max {
        let prev = &rows[k - 1];
        let c = |j: usize| if j >= 1 && j <= k { prev[j - 1] } else { 0 };
        let mut next = Vec::with_capacity(k + 1);
        for j in 1..=k + 1 {
            let v = ((2 * k - j) as u128)
                .checked_mul(c(j))
                .and_then(|x| x.checked_add(c(j - 1)))
                .ok_or_else(|| Error::Domain(format!("C({}, {j}) overflows u128", k + 1)))?;
            next.push(v);
        }
        rows.push(next);
    }
    Ok(CkjTable { k_max, rows })
}

/// L^k D^n applied to t^{−1/2} e^{−r²/4t}, with L = (1/(2 cosh(r/2))) D expanded as a
/// half-frequency operator followed by a cosh^{−1} factor.
pub fn an_operator_power<T: Real>(n: usize, k: usize, coeff: T) -> RadialKernelExpr<T> {
    let mut e = RadialKernelExpr::gaussian(coeff, T::lit(0.5));
    for _ in 0..n {
        e = e.apply_d(-T::one());
    }
    for _ in 0..k {
        e = e.apply_d(-T::lit(0.5)).mul_cosh(-1);
    }
    e
}

/// L^k D^n e^{−r²/4t} computed two ways: by repeated differentiation, and through the
/// C(k, j) sum of pure D-powers. Returns (direct, expansion).
pub fn expansion_identity<T: Real>(n: usize, k: usize, t: T, r: T) -> Result<(T, T)> {
    if k < 1 || !(t > T::zero()) {
        return domain(format!("expansion identity needs k ≥ 1 and t > 0, got k = {k}, t = {t}"));
    }
    let st = t.sqrt();
    let direct = st * an_operator_power(n, k, T::one()).eval(t, r);
    let table = ckj_table(k)?;
    let two_c = T::lit(2.0) * (r * T::lit(0.5)).cosh();
    let mut e = RadialKernelExpr::gaussian(T::one(), T::lit(0.5));
    for _ in 0..n {
        e = e.apply_d(-T::one());
    }
    let mut sum = T::zero();
    for j in 1..=k {
        e = e.apply_d(-T::one());
        let c = T::from_u128(table.get(k, j)).expect("coefficient representable");
        sum = sum + c * two_c.powi(j as i32 - 2 * k as i32) * st * e.eval(t, r);
    }
    Ok((direct, sum))
}

/// L^k D^n e^{−r²/4t} and the lower bound √(πt)(2cosh(r/2))^{−k} π^{n+k} e^{(n+k)²t/4} K_{2(n+k)+1}(t/4, r/2)
/// obtained by keeping only the j = k term. Returns (value, bound).
pub fn lower_bound_route<T: Real>(n: usize, k: usize, t: T, r: T) -> Result<(T, T)> {
    if k < 1 || !(t > T::zero()) {
        return domain(format!("lower bound needs k ≥ 1 and t > 0, got k = {k}, t = {t}"));
    }
    let value = t.sqrt() * an_operator_power(n, k, T::one()).eval(t, r);
    let nk = n + k;
    let nkf = T::of(nk);
    let pi = T::PI();
    let bound = (pi * t).sqrt()
        * (T::lit(2.0) * (r * T::lit(0.5)).cosh()).powi(-(k as i32))
        * pi.powi(nk as i32)
        * (nkf * nkf * t * T::lit(0.25)).exp()
        * odd_heat_expr::<T>(2 * nk + 1)?.eval(t * T::lit(0.25), r * T::lit(0.5));
    Ok((value, bound))
}

/// Heat kernel on the AN group R^+ × N with N of H-type, dim N = 2n + m, Q = n + m.
///
/// m even: 2^{−2n−m/2−1} π^{−(2n+m+1)/2} t^{−1/2} e^{−Q²t/4} L^{m/2} D^n e^{−r²/4t}.
/// m odd: 2^{−2n−m/2−1} π^{−(2n+m+2)/2} t^{−1/2} e^{−Q²t/4}
///        ∫_r^∞ sinh s/√(cosh s − cosh r) L^{(m+1)/2} D^n e^{−s²/4t} ds.
#[derive(Debug, Clone)]
pub struct AnHeat<T> {
    pub two_n: usize,
    pub m: usize,
    expr: RadialKernelExpr<T>,
}

impl<T: Real> AnHeat<T> {
    pub fn new(two_n: usize, m: usize) -> Result<Self> {
        if two_n < 2 || two_n % 2 == 1 || m < 1 {
            return domain(format!("invalid H-type dimensions (2n, m) = ({two_n}, {m})"));
        }
        let n = two_n / 2;
        let q = T::of(n + m);
        let pi = T::PI();
        let ln2_pow = -(T::of(two_n) + T::of(m) * T::lit(0.5) + T::one());
        let (pi_pow, k) = if m.is_multiple_of(2) {
            (-(T::of(two_n + m + 1)) * T::lit(0.5), m / 2)
        } else {
            (-(T::of(two_n + m + 2)) * T::lit(0.5), m.div_ceil(2))
        };
        let coeff = (ln2_pow * T::LN_2() + pi_pow * pi.ln()).exp();
        let expr = an_operator_power(n, k, coeff).damp(q * q * T::lit(0.25));
        Ok(Self { two_n, m, expr })
    }

    pub fn eval(&self, t: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
        if !(t > T::zero()) {
            return domain(format!("heat kernel needs t > 0, got t = {t}"));
        }
        let r = r.abs();
        if self.m.is_multiple_of(2) {
            return Ok(self.expr.eval(t, r));
        }
        let span = T::one() + T::lit(2.0) * t.sqrt();
        abel_cosh(|s| self.expr.eval(t, s), r, span, quad)
    }
}

pub fn an_heat<T: Real>(two_n: usize, m: usize, t: T, r: T, quad: &QuadratureSpec<T>) -> Result<T> {
    AnHeat::new(two_n, m)?.eval(t, r, quad)
}
