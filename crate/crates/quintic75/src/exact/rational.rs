//! The field ℚ backed by arbitrary-precision `BigRational`.

use super::Field;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// ℚ as a [`Field`] context. Stateless; all the work is in `BigRational`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn is_square(&self, a: &BigRational) -> Option<bool> {
        use num_traits::Signed;
        if a.is_negative() {
            return Some(false);
        }
        let perfect = |n: &BigInt| {
            let r = n.sqrt();
            &r * &r == *n
        };
        Some(perfect(a.numer()) && perfect(a.denom()))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn characteristic(&self) -> u64 {
        0
    }
}

/// `n/d` as a `BigRational`; panics on `d = 0` (programming error, not data).
pub fn rat(n: i64, d: i64) -> BigRational {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Numerator and denominator as `BigInt`s with positive denominator.
pub fn num_den(x: &BigRational) -> (BigInt, BigInt) {
    let (n, d) = (x.numer().clone(), x.denom().clone());
    if d.is_negative() {
        (-n, -d)
    } else {
        (n, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let x = rat(22, 7);
        let y = Rationals.inv(&x).unwrap();
        assert_eq!(Rationals.mul(&x, &y), Rationals.one());
        assert_eq!(Rationals.inv(&Rationals.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let x = rat(-3, 2);
        let mut acc = Rationals.one();
        for _ in 0..7 {
            acc = Rationals.mul(&acc, &x);
        }
        assert_eq!(Rationals.pow(&x, 7), acc);
    }
}
