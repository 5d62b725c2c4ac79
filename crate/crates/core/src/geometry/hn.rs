use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::{acosh1p, Real};

/// A point (y, x) of the upper half space R⁺ × R^{n−1}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HnPoint<T> {
    pub y: T,
    pub x: Vec<T>,
}

impl<T: Real> HnPoint<T> {
    pub fn new(y: T, x: Vec<T>) -> Result<Self> {
        if !(y > T::zero()) || !y.is_finite() {
            return domain(format!("half-space height must be positive, got y = {y}"));
        }
        Ok(Self { y, x })
    }

    /// The point (1, 0) in H^n.
    pub fn origin(n: usize) -> Self {
        Self { y: T::one(), x: vec![T::zero(); n.saturating_sub(1)] }
    }

    pub fn dim(&self) -> usize {
        self.x.len() + 1
    }
}

/// Hyperbolic distance arccosh((y² + v² + |x − w|²)/(2yv)), written as
/// acosh(1 + ((y − v)² + |x − w|²)/(2yv)) so that nearby points keep full precision.
///
/// Panics if the two points live in different dimensions.
pub fn hn_distance<T: Real>(p: &HnPoint<T>, q: &HnPoint<T>) -> T {
    assert_eq!(p.x.len(), q.x.len(), "hn_distance: dimension mismatch");
    let dy = p.y - q.y;
    let dx2: T = p.x.iter().zip(&q.x).map(|(a, b)| (*a - *b) * (*a - *b)).sum();
    acosh1p((dy * dy + dx2) / (T::lit(2.0) * p.y * q.y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_distances() {
        let o = HnPoint::<f64>::origin(3);
        assert_eq!(hn_distance(&o, &o), 0.0);
        let q = HnPoint::new(std::f64::consts::E, vec![0.0, 0.0]).unwrap();
        assert!((hn_distance(&o, &q) - 1.0).abs() < 1e-15);
        let q = HnPoint::new(1.0, vec![2.0, 0.0]).unwrap();
        assert!((hn_distance(&o, &q) - 3f64.acosh()).abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive_height() {
        assert!(HnPoint::new(0.0_f64, vec![]).is_err());
        assert!(HnPoint::new(-1.0_f64, vec![0.0]).is_err());
    }
}
