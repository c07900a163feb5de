//! Coefficient fields for the series algebra.
//!
//! Everything downstream is generic over [`Coeff`]: an exact mode backed by
//! arbitrary-precision rationals and an approximate mode backed by complex
//! doubles. The two never mix inside one series; tolerance arguments are
//! ignored by the exact type and mandatory for the approximate one.

use num::BigRational;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field of coefficients for truncated series.
///
/// `EXACT` decides pruning and comparison semantics: exact coefficients are
/// kept iff nonzero and compared with `==`; approximate ones are compared
/// against a caller-supplied tolerance via [`Coeff::is_negligible`].
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    const EXACT: bool;

    /// Embeds the rational p/q. Panics if q = 0.
    fn from_ratio(p: i64, q: i64) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    /// |x| as a double, for diagnostics and tolerance checks.
    fn magnitude(&self) -> f64;

    /// Exact mode: is zero. Approximate mode: |x| <= tol.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }
}

/// Exact scalar: arbitrary-precision rational.
pub type Rat = BigRational;

/// Approximate scalar: complex double.
pub type Cx = Complex64;

impl Coeff for Rat {
    const EXACT: bool = true;

    fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rat::new(p.into(), q.into())
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    fn magnitude(&self) -> f64 {
        num::ToPrimitive::to_f64(self).map(f64::abs).unwrap_or(f64::INFINITY)
    }
}

impl Coeff for Cx {
    const EXACT: bool = false;

    fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Cx::new(p as f64 / q as f64, 0.0)
    }

    fn try_inv(&self) -> Option<Self> {
        if self.norm() == 0.0 {
            None
        } else {
            Some(Self::one() / self)
        }
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Rational helper: p/q as an exact scalar.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::from_ratio(p, q)
}

/// Complex helper.
pub fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_exact() {
        assert!(Rat::EXACT);
        assert!(rat(0, 5).is_negligible(0.0));
        assert!(!rat(1, 1_000_000_000).is_negligible(0.5));
    }

    #[test]
    fn complex_uses_tolerance() {
        assert!(!Cx::EXACT);
        assert!(cx(1e-12, 0.0).is_negligible(1e-9));
        assert!(!cx(1e-6, 0.0).is_negligible(1e-9));
    }

    #[test]
    fn inverses() {
        assert_eq!(rat(3, 4).try_inv(), Some(rat(4, 3)));
        assert_eq!(rat(0, 1).try_inv(), None);
        let z = cx(0.0, 2.0);
        let w = z.try_inv().unwrap();
        assert!((z * w - Cx::one()).norm() < 1e-15);
    }

    #[test]
    fn magnitude_matches_abs() {
        assert_eq!(rat(-7, 2).magnitude(), 3.5);
        assert!((cx(3.0, 4.0).magnitude() - 5.0).abs() < 1e-15);
    }
}
