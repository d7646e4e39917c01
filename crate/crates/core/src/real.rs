//! Rational enclosures of irrational constants.
//!
//! `ln` is irrational for every integer argument above one, so bounds that
//! involve it are carried as a closed interval `[lo, hi]` with rational
//! endpoints. Each endpoint is rounded outward onto a dyadic grid, so an
//! inequality proved against the right endpoint holds for the true value.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{format_approx, int};

/// Binary digits kept after the point when endpoints are rounded.
pub const DEFAULT_PRECISION_BITS: u32 = 96;

/// A closed interval known to contain some real value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigRational,
    hi: BigRational,
}

impl Enclosure {
    pub fn exact(v: BigRational) -> Self {
        Enclosure { lo: v.clone(), hi: v }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "enclosure endpoints out of order");
        Enclosure { lo, hi }
    }

    pub fn lower(&self) -> &BigRational {
        &self.lo
    }

    pub fn upper(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Midpoint as a float, for display only.
    pub fn approx(&self) -> f64 {
        ((&self.lo + &self.hi) / int(2)).to_f64().unwrap_or(f64::NAN)
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        Enclosure {
            lo: &self.lo + r,
            hi: &self.hi + r,
        }
    }

    /// Product with a non-negative rational.
    pub fn scale(&self, r: &BigRational) -> Self {
        assert!(!r.is_negative(), "scale factor must be non-negative");
        Enclosure {
            lo: &self.lo * r,
            hi: &self.hi * r,
        }
    }

    /// Certainly `<= r` (true value is at most `r`).
    pub fn certainly_le(&self, r: &BigRational) -> bool {
        &self.hi <= r
    }

    /// Certainly `>= r`.
    pub fn certainly_ge(&self, r: &BigRational) -> bool {
        &self.lo >= r
    }

    /// True value might be `< r`; the complement of `certainly_ge`.
    pub fn possibly_lt(&self, r: &BigRational) -> bool {
        !self.certainly_ge(r)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_approx(self.approx()))
    }
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn round_down(r: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let scaled = r * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.floor().to_integer(), scale)
}

fn round_up(r: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let scaled = r * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.ceil().to_integer(), scale)
}

/// Encloses `2·atanh(y) = ln((1+y)/(1-y))` for rational `0 <= y <= 1/3`.
fn two_atanh(y: &BigRational, bits: u32) -> Enclosure {
    debug_assert!(!y.is_negative() && *y <= BigRational::new(1.into(), 3.into()));
    if y.is_zero() {
        return Enclosure::exact(BigRational::zero());
    }
    let y2 = y * y;
    let tol = BigRational::new(BigInt::one(), pow2(bits + 4));
    let tail_factor = BigRational::one() / (BigRational::one() - &y2);
    let mut power = y.clone();
    let mut sum = BigRational::zero();
    let mut k = 0usize;
    loop {
        sum += &power / int(2 * k + 1);
        power *= &y2;
        k += 1;
        // sum_{j>=k} y^{2j+1}/(2j+1) <= y^{2k+1} / ((2k+1)(1-y^2))
        let tail = &power / int(2 * k + 1) * &tail_factor;
        if tail < tol {
            let lo = round_down(&(int(2) * &sum), bits);
            let hi = round_up(&(int(2) * (&sum + &tail)), bits);
            return Enclosure::new(lo, hi);
        }
    }
}

/// Encloses `ln(x)` for a positive integer `x`.
pub fn ln_int(x: u64, bits: u32) -> Enclosure {
    assert!(x >= 1, "ln of zero");
    if x == 1 {
        return Enclosure::exact(BigRational::zero());
    }
    // x = 2^k · r with r in [1, 2); ln x = k ln 2 + ln r.
    let k = 63 - x.leading_zeros();
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let ln2 = two_atanh(&third, bits + 8);
    let r = BigRational::new(BigInt::from(x), BigInt::from(1u64 << k));
    // r = (1+y)/(1-y)  =>  y = (r-1)/(r+1) in [0, 1/3)
    let y = (&r - BigRational::one()) / (&r + BigRational::one());
    let ln_r = two_atanh(&y, bits + 8);
    let kk = int(k as usize);
    Enclosure::new(
        round_down(&(ln2.lower() * &kk + ln_r.lower()), bits),
        round_up(&(ln2.upper() * &kk + ln_r.upper()), bits),
    )
}

/// Encloses `1 + ln(1 + d)`, the ratio bound for maximum degree `d`.
pub fn one_plus_ln_one_plus(d: usize) -> Enclosure {
    ln_int(d as u64 + 1, DEFAULT_PRECISION_BITS).add_rational(&BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_contains(e: &Enclosure, v: f64) {
        let lo = e.lower().to_f64().unwrap();
        let hi = e.upper().to_f64().unwrap();
        assert!(lo <= v + 1e-15 && v - 1e-15 <= hi, "{v} not in [{lo}, {hi}]");
        assert!(e.width() < BigRational::new(BigInt::one(), pow2(80)));
    }

    #[test]
    fn ln_one_is_exact_zero() {
        let e = ln_int(1, 64);
        assert!(e.is_exact());
        assert!(e.lower().is_zero());
    }

    #[test]
    fn ln_matches_libm() {
        for x in [2u64, 3, 4, 5, 7, 27, 33, 65, 129, 257, 1000, 1 << 40, u64::MAX] {
            assert_contains(&ln_int(x, 96), (x as f64).ln());
        }
    }

    #[test]
    fn ln_additivity_brackets() {
        // ln 6 = ln 2 + ln 3: both enclosures of the sum must intersect.
        let a = ln_int(6, 96);
        let b2 = ln_int(2, 96);
        let b3 = ln_int(3, 96);
        let lo = b2.lower() + b3.lower();
        let hi = b2.upper() + b3.upper();
        assert!(a.lower() <= &hi && &lo <= a.upper());
    }

    #[test]
    fn harmonic_numbers_stay_below_one_plus_ln() {
        // H_p <= 1 + ln p, checked soundly with the lower endpoint.
        let mut h = BigRational::zero();
        for p in 1..=200usize {
            h += BigRational::new(BigInt::one(), BigInt::from(p));
            let bound = ln_int(p as u64, 96).add_rational(&BigRational::one());
            assert!(bound.certainly_ge(&h), "H_{p} exceeds 1 + ln {p}");
        }
    }

    #[test]
    fn ratio_bound_values() {
        assert!(one_plus_ln_one_plus(0).is_exact());
        assert!((one_plus_ln_one_plus(2).approx() - (1.0 + 3f64.ln())).abs() < 1e-12);
        assert!((one_plus_ln_one_plus(32).approx() - 4.49650756).abs() < 1e-7);
    }
}
