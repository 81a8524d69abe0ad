//! Integer utilities: prime sieves, trial-division factorization (desk
//! scale by design), squarefree kernels / square classes, and resultants
//! of integer polynomials.

use crate::exact::rational::Rationals;
use crate::poly::{resultant, Poly};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// All primes up to and including `n`, by Eratosthenes.
pub fn primes_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p <= n {
        if sieve[p] {
            let mut k = p * p;
            while k <= n {
                sieve[k] = false;
                k += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Trial-division factorization of `n ≥ 1` into `(prime, exponent)` pairs
/// in increasing prime order. Intended for desk-scale inputs (≤ ~10¹², so
/// trial primes up to 10⁶ suffice).
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of a nonzero integer, by trial division with
/// primes up to `limit`. Panics if a cofactor above `limit²` survives —
/// every integer this crate factors is built from small primes, so a
/// survivor means a bug upstream, not an input to tolerate.
pub fn prime_divisors_bigint(n: &BigInt, limit: u64) -> Vec<u64> {
    assert!(!n.is_zero());
    let mut m = n.abs();
    let mut out = Vec::new();
    for p in primes_upto(limit) {
        let pb = BigInt::from(p);
        if (&m % &pb).is_zero() {
            out.push(p);
            while (&m % &pb).is_zero() {
                m /= &pb;
            }
        }
        if m.is_one() {
            break;
        }
    }
    assert!(
        m.is_one(),
        "cofactor {m} not exhausted by primes up to {limit}"
    );
    out
}

/// Sign and squarefree kernel of a nonzero integer: `class(n·k²) = class(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquareClass {
    pub negative: bool,
    /// Positive squarefree integer.
    pub kernel: u64,
}

impl SquareClass {
    /// The class as a signed integer, e.g. `-67`.
    pub fn value(&self) -> i64 {
        let k = self.kernel as i64;
        if self.negative {
            -k
        } else {
            k
        }
    }

    /// Kernel as factored digits when it has several prime factors and is
    /// not small, mirroring the usual table style: `-67`, `-21`, `-29·47`,
    /// `-3·5·11`.
    pub fn display(&self) -> String {
        let sign = if self.negative { "-" } else { "" };
        if self.kernel > 99 {
            let parts: Vec<String> = factor_u64(self.kernel)
                .into_iter()
                .map(|(p, _)| p.to_string())
                .collect();
            format!("{sign}{}", parts.join("·"))
        } else {
            format!("{sign}{}", self.kernel)
        }
    }
}

impl std::fmt::Display for SquareClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// Square class of a nonzero integer (trial-division factorization).
pub fn square_class(n: &BigInt) -> Result<SquareClass> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let negative = n.is_negative();
    let mut m = n.abs();
    let mut kernel: u64 = 1;
    let mut d = BigInt::from(2u64);
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            let mut e = 0u32;
            while (&m % &d).is_zero() {
                m /= &d;
                e += 1;
            }
            if e % 2 == 1 {
                kernel *= d.to_u64().expect("trial divisor fits u64");
            }
        }
        d += if d == BigInt::from(2u64) { 1 } else { 2 };
    }
    if m > BigInt::one() {
        kernel *= m.to_u64().ok_or(Error::FieldTooLarge(u128::MAX))?;
    }
    Ok(SquareClass { negative, kernel })
}

fn to_rational_poly(f: &[BigInt]) -> Poly<BigRational> {
    Poly::new(
        &Rationals,
        f.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
}

/// Resultant of two nonzero integer polynomials (coefficients low to high).
/// `res(f, g) = lc(g)^{deg f}·∏ f(β)` over the roots β of `g`.
pub fn resultant_int(f: &[BigInt], g: &[BigInt]) -> Result<BigInt> {
    let fp = to_rational_poly(f);
    let gp = to_rational_poly(g);
    if fp.is_zero() || gp.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let r = resultant(&Rationals, &fp, &gp);
    debug_assert!(r.denom().is_one(), "integer resultant has denominator 1");
    Ok(r.to_integer())
}

/// Convenience wrapper for small coefficients.
pub fn resultant_i64(f: &[i64], g: &[i64]) -> Result<BigInt> {
    let fb: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
    let gb: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
    resultant_int(&fb, &gb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_small() {
        assert_eq!(primes_upto(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn factor_roundtrip() {
        assert_eq!(factor_u64(180625), vec![(5, 4), (17, 2)]);
        assert_eq!(factor_u64(6765625), vec![(5, 6), (433, 1)]);
        assert_eq!(factor_u64(1), vec![]);
    }

    #[test]
    fn square_class_examples() {
        // -603 = -3²·67 and -1344 = -2⁶·21
        let c = square_class(&BigInt::from(-603)).unwrap();
        assert_eq!((c.negative, c.kernel), (true, 67));
        let c = square_class(&BigInt::from(-1344)).unwrap();
        assert_eq!((c.negative, c.kernel), (true, 21));
        let c = square_class(&BigInt::from(9)).unwrap();
        assert_eq!((c.negative, c.kernel), (false, 1));
        assert_eq!(square_class(&BigInt::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn square_class_display_matches_table_style() {
        assert_eq!(square_class(&BigInt::from(-67)).unwrap().display(), "-67");
        assert_eq!(square_class(&BigInt::from(-21)).unwrap().display(), "-21");
        assert_eq!(
            square_class(&BigInt::from(-1363)).unwrap().display(),
            "-29·47"
        );
        assert_eq!(
            square_class(&BigInt::from(-165)).unwrap().display(),
            "-3·5·11"
        );
    }

    #[test]
    fn resultant_int_examples() {
        // res_b(b⁴-b³+1, 3b+2) = 121, res_b(b⁴-b³+1, b+2) = 25,
        // res_b(b⁴-b³+1, b) = 1
        let f = [1i64, 0, 0, -1, 1];
        assert_eq!(resultant_i64(&f, &[2, 3]).unwrap(), BigInt::from(121));
        assert_eq!(resultant_i64(&f, &[2, 1]).unwrap(), BigInt::from(25));
        assert_eq!(resultant_i64(&f, &[0, 1]).unwrap(), BigInt::from(1));
        assert_eq!(resultant_i64(&[], &[1, 2]), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn prime_divisors_of_big_product() {
        let n = BigInt::from(6765625i64) * BigInt::from(180625i64) * BigInt::from(-121i64);
        assert_eq!(prime_divisors_bigint(&n, 1000), vec![5, 11, 17, 433]);
    }
}
