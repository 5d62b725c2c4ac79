//! One-dimensional test profiles used to build radial and product test functions.

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile<T> {
    Constant {
        value: T,
    },
    /// 1 on [lo, hi), 0 elsewhere.
    Indicator {
        lo: T,
        hi: T,
    },
    /// e^{−((x − center)/width)²}.
    Gaussian {
        center: T,
        width: T,
    },
    /// 1 / (1 + (x/scale)²).
    Cauchy {
        scale: T,
    },
    /// e^{−rate·x} for x ≥ 0, 0 for x < 0.
    ExpTail {
        rate: T,
    },
}

impl<T: Real> Profile<T> {
    pub fn eval(&self, x: T) -> T {
        match *self {
            Profile::Constant { value } => value,
            Profile::Indicator { lo, hi } => {
                if x >= lo && x < hi {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Profile::Gaussian { center, width } => {
                if !x.is_finite() {
                    return T::zero();
                }
                let z = (x - center) / width;
                (-z * z).exp()
            }
            Profile::Cauchy { scale } => {
                if !x.is_finite() {
                    return T::zero();
                }
                let z = x / scale;
                (T::one() + z * z).recip()
            }
            Profile::ExpTail { rate } => {
                if x < T::zero() || x.is_infinite() {
                    T::zero()
                } else {
                    (-rate * x).exp()
                }
            }
        }
    }

    /// Points where the profile is not smooth, or where it changes scale.
    pub fn breaks(&self) -> Vec<T> {
        match *self {
            Profile::Constant { .. } | Profile::Cauchy { .. } => Vec::new(),
            Profile::Indicator { lo, hi } => vec![lo, hi],
            Profile::Gaussian { center, .. } => vec![center],
            Profile::ExpTail { .. } => vec![T::zero()],
        }
    }

    pub fn sup(&self) -> T {
        match *self {
            Profile::Constant { value } => value.abs(),
            _ => T::one(),
        }
    }

    /// Interval outside of which the profile is below `tol` (or identically zero).
    pub fn essential_support(&self, tol: T) -> (T, T) {
        let big = T::infinity();
        match *self {
            Profile::Constant { .. } => (-big, big),
            Profile::Indicator { lo, hi } => (lo, hi),
            Profile::Gaussian { center, width } => {
                let w = width * (-tol.ln()).sqrt();
                (center - w, center + w)
            }
            Profile::Cauchy { scale } => {
                let w = scale * (tol.recip() - T::one()).max(T::zero()).sqrt();
                (-w, w)
            }
            Profile::ExpTail { rate } => (T::zero(), -tol.ln() / rate),
        }
    }
}

/// Ascending break list covering [lo, hi] with the profile's own breaks inserted.
pub fn merged_breaks<T: Real>(lo: T, hi: T, extra: &[T]) -> Vec<T> {
    let mut b: Vec<T> = vec![lo, hi];
    b.extend(extra.iter().copied().filter(|&x| x > lo && x < hi));
    b.sort_by(|a, c| a.partial_cmp(c).expect("finite break points"));
    b.dedup();
    b
}
