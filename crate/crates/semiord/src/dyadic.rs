//! Exact dyadic rationals `mantissa * 2^exponent`.
//!
//! Canonical form: the mantissa is odd, except for zero which is stored as
//! `0 * 2^0`. Equality and ordering are by value.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    mantissa: BigInt,
    exponent: i64,
}

impl DyadicRational {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut value = DyadicRational { mantissa, exponent };
        value.normalize();
        value
    }

    pub fn zero() -> Self {
        DyadicRational {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        DyadicRational {
            mantissa: BigInt::one(),
            exponent: 0,
        }
    }

    pub fn from_integer(value: BigInt) -> Self {
        DyadicRational::new(value, 0)
    }

    /// Reads a rational as a dyadic. `None` unless the reduced denominator is
    /// a power of two.
    pub fn from_rational(value: &BigRational) -> Option<Self> {
        let denom = value.denom();
        if denom.is_one() {
            return Some(DyadicRational::from_integer(value.numer().clone()));
        }
        let bits = denom.bits();
        // A power of two has exactly one set bit.
        if denom != &(BigInt::one() << (bits - 1)) {
            return None;
        }
        Some(DyadicRational::new(
            value.numer().clone(),
            -((bits - 1) as i64),
        ))
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let shift = self.mantissa.trailing_zeros().unwrap_or(0);
        if shift > 0 {
            self.mantissa >>= shift;
            self.exponent += shift as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        self.mantissa.cmp(&BigInt::zero())
    }

    pub fn neg(&self) -> Self {
        DyadicRational {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let exponent = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - exponent) as u64;
        let b = &other.mantissa << (other.exponent - exponent) as u64;
        DyadicRational::new(a + b, exponent)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        DyadicRational::new(
            &self.mantissa * &other.mantissa,
            self.exponent + other.exponent,
        )
    }

    pub fn mul_int(&self, factor: &BigInt) -> Self {
        DyadicRational::new(&self.mantissa * factor, self.exponent)
    }

    /// Multiplies by `2^shift` (negative shifts halve).
    pub fn scale_exp(&self, shift: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        DyadicRational {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + shift,
        }
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        self.sub(other).signum()
    }

    /// `floor(self * 2^level)` as an exact integer.
    pub fn floor_at_level(&self, level: u32) -> BigInt {
        let shift = self.exponent + level as i64;
        if shift >= 0 {
            &self.mantissa << shift as u64
        } else {
            // Floor division by a power of two.
            self.mantissa.div_floor(&(BigInt::one() << (-shift) as u64))
        }
    }

    /// Nearest integer to `self * 2^level`, ties rounding up.
    pub fn round_at_level(&self, level: u32) -> BigInt {
        let doubled = self.floor_at_level(level + 1);
        (doubled + BigInt::one()).div_floor(&BigInt::from(2))
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            BigRational::new(
                self.mantissa.clone(),
                BigInt::one() << (-self.exponent) as u64,
            )
        }
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for DyadicRational {
    /// Renders as an integer or a reduced fraction over a power of two, so the
    /// output re-parses as a rational literal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent >= 0 {
            let value: BigInt = &self.mantissa << self.exponent as u64;
            write!(f, "{}", value)
        } else {
            let denom: BigInt = BigInt::one() << (-self.exponent) as u64;
            write!(f, "{}/{}", self.mantissa, denom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(m: i64, e: i64) -> DyadicRational {
        DyadicRational::new(BigInt::from(m), e)
    }

    #[test]
    fn normalizes_even_mantissas() {
        let x = dy(12, -3);
        assert_eq!(x.mantissa(), &BigInt::from(3));
        assert_eq!(x.exponent(), -1);
        assert_eq!(dy(0, 5), DyadicRational::zero());
    }

    #[test]
    fn arithmetic_matches_rationals() {
        let a = dy(-5, -3); // -5/8
        let b = dy(3, -1); // 3/2
        assert_eq!(a.add(&b).to_rational(), a.to_rational() + b.to_rational());
        assert_eq!(a.sub(&b).to_rational(), a.to_rational() - b.to_rational());
        assert_eq!(a.mul(&b).to_rational(), a.to_rational() * b.to_rational());
        assert_eq!(a.compare(&b), Ordering::Less);
    }

    #[test]
    fn floor_at_level_rounds_toward_negative_infinity() {
        let x = dy(-5, -3); // -0.625
        assert_eq!(x.floor_at_level(0), BigInt::from(-1));
        assert_eq!(x.floor_at_level(3), BigInt::from(-5));
        assert_eq!(dy(5, -3).floor_at_level(0), BigInt::from(0));
        assert_eq!(dy(5, -3).floor_at_level(1), BigInt::from(1));
    }

    #[test]
    fn round_at_level_is_nearest() {
        assert_eq!(dy(5, -3).round_at_level(0), BigInt::from(1)); // 0.625
        assert_eq!(dy(3, -3).round_at_level(0), BigInt::from(0)); // 0.375
        assert_eq!(dy(-5, -3).round_at_level(0), BigInt::from(-1));
        assert_eq!(dy(1, -1).round_at_level(0), BigInt::from(1)); // tie rounds up
    }

    #[test]
    fn display_reparses() {
        assert_eq!(dy(-5, -3).to_string(), "-5/8");
        assert_eq!(dy(3, 2).to_string(), "12");
        assert_eq!(DyadicRational::zero().to_string(), "0");
    }

    #[test]
    fn from_rational_requires_power_of_two_denominator() {
        let q = BigRational::new(BigInt::from(5), BigInt::from(16));
        assert_eq!(DyadicRational::from_rational(&q), Some(dy(5, -4)));
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(DyadicRational::from_rational(&q), None);
    }
}
