use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Structure data (2n, m, U⁽¹⁾…U⁽ᵐ⁾) of an H-type group R^{2n} × R^m.
/// Matrices are stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HTypeDescriptor<T> {
    pub two_n: usize,
    pub m: usize,
    #[serde(rename = "U")]
    pub u: Vec<Vec<T>>,
}

/// A point (x, ϱ) ∈ R^{2n} × R^m.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HTypePoint<T> {
    pub x: Vec<T>,
    pub rho: Vec<T>,
}

impl<T: Real> HTypePoint<T> {
    pub fn zero(d: &HTypeDescriptor<T>) -> Self {
        Self { x: vec![T::zero(); d.two_n], rho: vec![T::zero(); d.m] }
    }

    pub fn x_norm_sq(&self) -> T {
        self.x.iter().map(|v| *v * *v).sum()
    }

    pub fn rho_norm_sq(&self) -> T {
        self.rho.iter().map(|v| *v * *v).sum()
    }
}

/// Radon–Hurwitz number ρ(2n) = 8p + 2^q for 2n = (2l + 1)·2^{4p+q}, 0 ≤ q < 4.
pub fn radon_hurwitz(two_n: usize) -> usize {
    assert!(two_n > 0);
    let e = two_n.trailing_zeros() as usize;
    let (p, q) = (e / 4, e % 4);
    8 * p + (1 << q)
}

impl<T: Real> HTypeDescriptor<T> {
    /// Validates dimensions and the skew-symmetry, orthogonality and anticommutation conditions.
    pub fn new(two_n: usize, m: usize, u: Vec<Vec<T>>) -> Result<Self> {
        let d = Self { two_n, m, u };
        d.validate()?;
        Ok(d)
    }

    /// H(2k, 1): a single block-diagonal rotation by π/2, so ⟨x, Uw⟩ = Im⟨x, w⟩ on C^k.
    pub fn heisenberg(k: usize) -> Self {
        let n2 = 2 * k;
        let mut u = vec![T::zero(); n2 * n2];
        for j in 0..k {
            let (a, b) = (2 * j, 2 * j + 1);
            u[a * n2 + b] = -T::one();
            u[b * n2 + a] = T::one();
        }
        Self { two_n: n2, m: 1, u: vec![u] }
    }

    /// A 4 × 4 family with m = 2 or 3 built from the quaternion units (left multiplication by i, j, k).
    pub fn quaternionic(m: usize) -> Result<Self> {
        if !(1..=3).contains(&m) {
            return Err(Error::InvalidDescriptor(format!("quaternionic descriptor needs 1 ≤ m ≤ 3, got {m}")));
        }
        let z = T::zero();
        let o = T::one();
        // Left multiplication by i, j, k on (1, i, j, k) coordinates.
        let li = vec![z, -o, z, z, o, z, z, z, z, z, z, -o, z, z, o, z];
        let lj = vec![z, z, -o, z, z, z, z, o, o, z, z, z, z, -o, z, z];
        let lk = vec![z, z, z, -o, z, z, -o, z, z, o, z, z, o, z, z, z];
        let all = [li, lj, lk];
        Self::new(4, m, all[..m].to_vec())
    }

    pub fn validate(&self) -> Result<()> {
        let n2 = self.two_n;
        if n2 == 0 || !n2.is_multiple_of(2) {
            return Err(Error::InvalidDescriptor(format!("two_n must be a positive even integer, got {n2}")));
        }
        if self.m == 0 || self.u.len() != self.m {
            return Err(Error::InvalidDescriptor(format!(
                "expected m = {} ≥ 1 matrices, got {}",
                self.m,
                self.u.len()
            )));
        }
        let tol = T::lit(1e-12).max(T::lit(100.0) * T::epsilon());
        for (j, u) in self.u.iter().enumerate() {
            if u.len() != n2 * n2 {
                return Err(Error::InvalidDescriptor(format!(
                    "U({}) has {} entries, expected {}",
                    j + 1,
                    u.len(),
                    n2 * n2
                )));
            }
            for a in 0..n2 {
                for b in 0..n2 {
                    if (u[a * n2 + b] + u[b * n2 + a]).abs() > tol {
                        return Err(Error::InvalidDescriptor(format!(
                            "U({}) is not skew-symmetric at ({a}, {b})",
                            j + 1
                        )));
                    }
                    let g: T = (0..n2).map(|c| u[c * n2 + a] * u[c * n2 + b]).sum();
                    let id = if a == b { T::one() } else { T::zero() };
                    if (g - id).abs() > tol {
                        return Err(Error::InvalidDescriptor(format!("U({}) is not orthogonal at ({a}, {b})", j + 1)));
                    }
                }
            }
        }
        for i in 0..self.m {
            for j in i + 1..self.m {
                let (ui, uj) = (&self.u[i], &self.u[j]);
                for a in 0..n2 {
                    for b in 0..n2 {
                        let s: T =
                            (0..n2).map(|c| ui[a * n2 + c] * uj[c * n2 + b] + uj[a * n2 + c] * ui[c * n2 + b]).sum();
                        if s.abs() > tol {
                            return Err(Error::InvalidDescriptor(format!(
                                "U({}) and U({}) do not anticommute at ({a}, {b})",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether (2n, m) satisfies m < ρ(2n). Reported only; constructors do not enforce it.
    pub fn satisfies_radon_hurwitz(&self) -> bool {
        self.m < radon_hurwitz(self.two_n)
    }

    /// Component j of ⟨x, Uw⟩, i.e. xᵀU⁽ʲ⁾w.
    pub fn form(&self, j: usize, x: &[T], w: &[T]) -> T {
        let n2 = self.two_n;
        let u = &self.u[j];
        let mut s = T::zero();
        for a in 0..n2 {
            if x[a] == T::zero() {
                continue;
            }
            let row: T = (0..n2).map(|b| u[a * n2 + b] * w[b]).sum();
            s = s + x[a] * row;
        }
        s
    }

    pub fn check_point(&self, p: &HTypePoint<T>) -> Result<()> {
        if p.x.len() != self.two_n {
            return Err(Error::DimensionMismatch { expected: self.two_n, got: p.x.len() });
        }
        if p.rho.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, got: p.rho.len() });
        }
        Ok(())
    }
}

/// (x, ϱ)·(w, u) = (x + w, ϱ + u + ½⟨x, Uw⟩).
pub fn htype_mul<T: Real>(d: &HTypeDescriptor<T>, p: &HTypePoint<T>, q: &HTypePoint<T>) -> Result<HTypePoint<T>> {
    d.check_point(p)?;
    d.check_point(q)?;
    let half = T::lit(0.5);
    let x = p.x.iter().zip(&q.x).map(|(a, b)| *a + *b).collect();
    let rho = (0..d.m).map(|j| p.rho[j] + q.rho[j] + half * d.form(j, &p.x, &q.x)).collect();
    Ok(HTypePoint { x, rho })
}

/// (x, ϱ)⁻¹ = (−x, −ϱ).
pub fn htype_inv<T: Real>(p: &HTypePoint<T>) -> HTypePoint<T> {
    HTypePoint { x: p.x.iter().map(|v| -*v).collect(), rho: p.rho.iter().map(|v| -*v).collect() }
}

/// δ_r(x, ϱ) = (r x, r² ϱ).
pub fn htype_dilate<T: Real>(p: &HTypePoint<T>, r: T) -> HTypePoint<T> {
    let r2 = r * r;
    HTypePoint { x: p.x.iter().map(|v| *v * r).collect(), rho: p.rho.iter().map(|v| *v * r2).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_descriptors_validate() {
        for k in 1..5 {
            HTypeDescriptor::<f64>::heisenberg(k).validate().unwrap();
        }
        for m in 1..=3 {
            HTypeDescriptor::<f64>::quaternionic(m).unwrap();
        }
    }

    #[test]
    fn broken_descriptors_rejected() {
        let mut d = HTypeDescriptor::<f64>::heisenberg(1);
        d.u[0][1] = -2.0;
        d.u[0][2] = 2.0;
        assert!(d.validate().is_err(), "scaled rotation is not orthogonal");
        let d = HTypeDescriptor::<f64>::new(2, 1, vec![vec![0.0, 1.0, 1.0, 0.0]]);
        assert!(d.is_err(), "symmetric matrix is not skew");
        let q = HTypeDescriptor::<f64>::quaternionic(1).unwrap();
        let dup = HTypeDescriptor::new(4, 2, vec![q.u[0].clone(), q.u[0].clone()]);
        assert!(dup.is_err(), "a matrix does not anticommute with itself");
    }

    #[test]
    fn radon_hurwitz_values() {
        assert_eq!(radon_hurwitz(2), 2);
        assert_eq!(radon_hurwitz(4), 4);
        assert_eq!(radon_hurwitz(8), 8);
        assert_eq!(radon_hurwitz(16), 9);
        assert_eq!(radon_hurwitz(6), 2);
        let d = HTypeDescriptor::<f64>::quaternionic(3).unwrap();
        assert!(d.satisfies_radon_hurwitz());
    }

    #[test]
    fn heisenberg_form_is_imaginary_part() {
        let d = HTypeDescriptor::<f64>::heisenberg(2);
        let x = [0.3, -1.2, 2.0, 0.7];
        let w = [1.1, 0.4, -0.5, 0.9];
        let im: f64 = (0..2).map(|j| x[2 * j + 1] * w[2 * j] - x[2 * j] * w[2 * j + 1]).sum();
        assert!((d.form(0, &x, &w) - im).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_reported() {
        let d = HTypeDescriptor::<f64>::heisenberg(1);
        let p = HTypePoint { x: vec![0.0; 3], rho: vec![0.0] };
        assert!(htype_mul(&d, &p, &p).is_err());
    }

    #[test]
    fn descriptor_json_round_trip() {
        let d = HTypeDescriptor::<f64>::heisenberg(1);
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"U\""));
        let back: HTypeDescriptor<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
