//! Arbitrary-precision rationals: the degree-one base of every field here.
//!
//! `Rat` is `num`'s `BigRational`, which already maintains the canonical
//! invariants (reduced fraction, positive denominator); this module adds the
//! [`Scalar`] instance and small construction/parsing helpers shared by the
//! catalog format ("num/den" strings) and the CLI.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Scalar;
use crate::error::AlgebraError;

/// Exact rational number (reduced, positive denominator).
pub type Rat = BigRational;

/// `a/b` as a [`Rat`]; panics on `b = 0` (programmer error, not input).
pub fn rat(a: i64, b: i64) -> Rat {
    assert!(b != 0, "rat(_, 0)");
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `n` as a [`Rat`].
pub fn rat_i64(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"num"`, `"num/den"`, or `"-num/den"`; whitespace-tolerant.
pub fn rat_from_str(s: &str) -> Result<Rat, AlgebraError> {
    let t = s.trim();
    let parse_int = |x: &str| -> Result<BigInt, AlgebraError> {
        x.trim()
            .parse::<BigInt>()
            .map_err(|_| AlgebraError::Malformed(s.trim().to_string()))
    };
    match t.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(t)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
    }
}

impl Scalar for Rat {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}
    fn zero(_: &()) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(_: &(), n: i64) -> Self {
        rat_i64(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn invert(&self) -> Result<Self, AlgebraError> {
        if Zero::is_zero(self) {
            Err(AlgebraError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Serializes per the catalog grammar: integers bare, otherwise `num/den`.
pub fn rat_to_string(r: &Rat) -> String {
    Scalar::render(r)
}
