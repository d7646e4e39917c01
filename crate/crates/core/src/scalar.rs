//! Scalar abstraction shared by the weighting checks and the simplex engine.
//!
//! Exact types (`BigRational`) answer sign queries exactly. Floating types
//! answer them up to a fixed tolerance, which makes them usable for quick
//! pilot solves but never for certificates.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// An ordered field element usable by the LP and weighting code.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// True when the type compares exactly (no tolerance).
    const EXACT: bool;

    /// `num / den` in this scalar type. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Value is zero, or within tolerance of zero for floating types.
    fn is_negligible(&self) -> bool;

    /// Lossy conversion for human-readable output.
    fn approx(&self) -> f64;

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    /// Strictly positive beyond tolerance.
    fn is_pos(&self) -> bool {
        self.is_positive() && !self.is_negligible()
    }

    /// Strictly negative beyond tolerance.
    fn is_neg(&self) -> bool {
        self.is_negative() && !self.is_negligible()
    }

    /// `self <= other`, allowing for tolerance.
    fn le_tol(&self, other: &Self) -> bool {
        !(self.clone() - other.clone()).is_pos()
    }

    /// `self >= other`, allowing for tolerance.
    fn ge_tol(&self, other: &Self) -> bool {
        !(self.clone() - other.clone()).is_neg()
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn is_negligible(&self) -> bool {
                self.abs() <= $eps
            }

            fn approx(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-5);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Exact rational from a numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}

/// Exact rational `k / 1`.
pub fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Smallest integer `>= r`.
pub fn ceil_usize(r: &BigRational) -> usize {
    r.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// Renders a rational as `num/den` (always with a denominator).
pub fn format_exact(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_exact(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Six significant digits with an approximation marker.
pub fn format_approx(x: f64) -> String {
    if x == 0.0 {
        return "≈0".to_string();
    }
    let digits = 6i32;
    let mag = x.abs().log10().floor() as i32;
    let decimals = (digits - 1 - mag).max(0) as usize;
    format!("≈{:.*}", decimals, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_and_float_tolerances() {
        assert!(!ratio(1, 1_000_000_000_000).is_negligible());
        assert!(1e-12f64.is_negligible());
        assert!(1.0f64.le_tol(&(1.0 - 1e-12)));
        assert!(!ratio(1, 1).le_tol(&ratio(999_999, 1_000_000)));
        assert!(1.0f32.ge_tol(&0.99999f32));
    }

    #[test]
    fn exact_format_roundtrip() {
        let r = ratio(64, 27);
        assert_eq!(format_exact(&r), "64/27");
        assert_eq!(parse_exact("64/27"), Some(r));
        assert_eq!(parse_exact("4"), Some(int(4)));
        assert_eq!(format_exact(&int(4)), "4/1");
        assert_eq!(parse_exact("1/0"), None);
    }

    #[test]
    fn approx_rendering() {
        assert_eq!(format_approx(64.0 / 27.0), "≈2.37037");
        assert_eq!(format_approx(1.0), "≈1.00000");
        assert_eq!(format_approx(123.456789), "≈123.457");
    }

    #[test]
    fn ceiling() {
        assert_eq!(ceil_usize(&ratio(7, 3)), 3);
        assert_eq!(ceil_usize(&ratio(6, 3)), 2);
        assert_eq!(ceil_usize(&int(0)), 0);
    }
}
