use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// An exact angle `(p/q)·π`, kept reduced and normalized into `[0, 2π)`.
///
/// Two angles are equal exactly when they agree modulo `2π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalAngle(Ratio<i64>);

impl RationalAngle {
    pub const ZERO: RationalAngle = RationalAngle(Ratio::new_raw(0, 1));
    pub const PI: RationalAngle = RationalAngle(Ratio::new_raw(1, 1));

    /// The angle `(numerator/denominator)·π`.
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(Ratio::new(numerator, denominator)))
    }

    /// Shorthand for known-good literals; panics on a zero denominator.
    pub fn pi_frac(numerator: i64, denominator: i64) -> Self {
        Self::new(numerator, denominator).expect("non-zero denominator")
    }

    fn normalized(r: Ratio<i64>) -> Self {
        let two = Ratio::from_integer(2);
        let wrapped = r - two * (r / two).floor();
        RationalAngle(wrapped)
    }

    /// Numerator of the reduced multiple of π, in `[0, 2·denominator)`.
    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_pi(&self) -> bool {
        self.0.is_one()
    }

    /// The only lossy exit point.
    pub fn to_radians<T: Real>(&self) -> T {
        let num = T::from_i64(self.numerator()).expect("numerator fits");
        let den = T::from_i64(self.denominator()).expect("denominator fits");
        T::PI() * num / den
    }
}

impl Default for RationalAngle {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for RationalAngle {
    type Output = RationalAngle;

    fn add(self, rhs: RationalAngle) -> RationalAngle {
        Self::normalized(self.0 + rhs.0)
    }
}

impl Sub for RationalAngle {
    type Output = RationalAngle;

    fn sub(self, rhs: RationalAngle) -> RationalAngle {
        Self::normalized(self.0 - rhs.0)
    }
}

impl Neg for RationalAngle {
    type Output = RationalAngle;

    fn neg(self) -> RationalAngle {
        Self::normalized(-self.0)
    }
}

impl std::iter::Sum for RationalAngle {
    fn sum<I: Iterator<Item = RationalAngle>>(iter: I) -> Self {
        iter.fold(RationalAngle::ZERO, Add::add)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.numerator(), self.denominator()) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (p, 1) => write!(f, "{p}π"),
            (1, q) => write!(f, "π/{q}"),
            (p, q) => write!(f, "{p}π/{q}"),
        }
    }
}

/// A single phase entry: exact when it came from a rational multiple of π,
/// otherwise an arbitrary real number of radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phase {
    Exact(RationalAngle),
    Radians(f64),
}

impl Phase {
    pub fn radians<T: Real>(&self) -> T {
        match self {
            Phase::Exact(a) => a.to_radians(),
            Phase::Radians(x) => T::from_f64(*x).expect("finite phase"),
        }
    }

    pub fn exact(&self) -> Option<RationalAngle> {
        match self {
            Phase::Exact(a) => Some(*a),
            Phase::Radians(_) => None,
        }
    }
}

impl Neg for Phase {
    type Output = Phase;

    fn neg(self) -> Phase {
        match self {
            Phase::Exact(a) => Phase::Exact(-a),
            Phase::Radians(x) => Phase::Radians(-x),
        }
    }
}

impl From<RationalAngle> for Phase {
    fn from(a: RationalAngle) -> Phase {
        Phase::Exact(a)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Exact(a) => a.fmt(f),
            Phase::Radians(x) => write!(f, "{x} rad"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes_into_zero_two_pi() {
        let a = RationalAngle::pi_frac(-1, 4);
        assert_eq!((a.numerator(), a.denominator()), (7, 4));
        assert_eq!(RationalAngle::pi_frac(5, 4), RationalAngle::pi_frac(-3, 4));
        assert_eq!(RationalAngle::pi_frac(2, 1), RationalAngle::ZERO);
        assert_eq!(RationalAngle::pi_frac(6, 4), RationalAngle::pi_frac(-1, 2));
        assert_eq!(RationalAngle::pi_frac(3, -1), RationalAngle::PI);
        assert!(RationalAngle::pi_frac(-9, 9).is_pi());
        assert_eq!(RationalAngle::new(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn wraps_five_quarters_plus_half() {
        let sum = RationalAngle::pi_frac(5, 4) + RationalAngle::pi_frac(1, 2);
        assert_eq!(sum, RationalAngle::pi_frac(-1, 4));
    }

    #[test]
    fn radians() {
        let a: f64 = RationalAngle::pi_frac(-1, 4).to_radians();
        assert!((a - 7.0 * std::f64::consts::PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn display() {
        assert_eq!(RationalAngle::pi_frac(-1, 4).to_string(), "7π/4");
        assert_eq!(RationalAngle::PI.to_string(), "π");
        assert_eq!(RationalAngle::pi_frac(1, 2).to_string(), "π/2");
        assert_eq!(RationalAngle::ZERO.to_string(), "0");
    }

    fn angle() -> impl Strategy<Value = RationalAngle> {
        (-200i64..200, 1i64..=24).prop_map(|(p, q)| RationalAngle::pi_frac(p, q))
    }

    proptest! {
        #[test]
        fn addition_is_associative(a in angle(), b in angle(), c in angle()) {
            prop_assert_eq!((a + b) + c, a + (b + c));
        }

        #[test]
        fn negation_is_additive_inverse(a in angle()) {
            prop_assert_eq!(a + (-a), RationalAngle::ZERO);
            prop_assert_eq!(-(-a), a);
        }

        #[test]
        fn normalization_is_idempotent(a in angle()) {
            let again = RationalAngle::pi_frac(a.numerator(), a.denominator());
            prop_assert_eq!(again, a);
            prop_assert!(a.numerator() >= 0 && a.numerator() < 2 * a.denominator());
        }
    }
}
