//! The number field `ℚ(b)` with `b⁴ = b³ - 1`, home of the distinguished
//! pencil parameter `a = -2/(b+2)`. Elements are polynomials of degree ≤ 3
//! in `b` with rational coefficients; every product is reduced by the
//! defining relation, so the representation is canonical.

use super::rational::Rationals;
use super::{FElem, Field, FinField};
use crate::poly::{resultant, Poly};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coordinates with respect to the basis `1, b, b², b³`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NfElem(pub [BigRational; 4]);

/// `ℚ(b)` as a context object; the modulus is fixed for the whole crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumberField;

impl NumberField {
    /// The generator `b`.
    pub fn gen(&self) -> NfElem {
        let mut c = zero_coords();
        c[1] = BigRational::one();
        NfElem(c)
    }

    /// The defining polynomial `b⁴ - b³ + 1` over ℚ.
    pub fn modulus(&self) -> Poly<BigRational> {
        Poly::from_i64(&Rationals, &[1, 0, 0, -1, 1])
    }

    pub fn from_rational(&self, x: &BigRational) -> NfElem {
        let mut c = zero_coords();
        c[0] = x.clone();
        NfElem(c)
    }

    fn to_poly(&self, x: &NfElem) -> Poly<BigRational> {
        Poly::new(&Rationals, x.0.to_vec())
    }

    fn from_poly(&self, f: &Poly<BigRational>) -> NfElem {
        let red = f.divrem(&Rationals, &self.modulus()).1;
        let mut c = zero_coords();
        for (i, slot) in c.iter_mut().enumerate() {
            *slot = red.coeff(&Rationals, i);
        }
        NfElem(c)
    }

    /// Field norm `N(x) = ∏ x(bᵢ)` over the four conjugates.
    pub fn norm(&self, x: &NfElem) -> BigRational {
        let xp = self.to_poly(x);
        if xp.is_zero() {
            return BigRational::zero();
        }
        resultant(&Rationals, &self.modulus(), &xp)
    }

    /// Monic minimal polynomial of `x` over ℚ (degree 1, 2, or 4).
    pub fn min_poly(&self, x: &NfElem) -> Poly<BigRational> {
        // Find the least k with x^k in the span of 1, x, …, x^{k-1} by
        // solving the linear system on b-coordinates.
        let mut powers: Vec<NfElem> = vec![self.one()];
        for _ in 0..4 {
            let last = powers.last().unwrap();
            powers.push(self.mul(last, x));
        }
        for k in 1..=4 {
            if let Some(coeffs) = express_in_span(&powers[..k], &powers[k]) {
                // x^k = Σ coeffs[i] x^i  →  min poly x^k - Σ cᵢ xⁱ
                let mut poly = vec![BigRational::zero(); k + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    poly[i] = -c.clone();
                }
                poly[k] = BigRational::one();
                return Poly::new(&Rationals, poly);
            }
        }
        unreachable!("degree divides 4")
    }

    /// Embed into `𝔽_{p^e}` by `b ↦ root`; fails with `BadPrime` when a
    /// coefficient denominator vanishes mod p (a pole of the element at p).
    pub fn embed(&self, x: &NfElem, field: &FinField, root: &FElem) -> Result<FElem> {
        let p = field.characteristic();
        debug_assert!(
            field.is_zero(
                &Poly::from_i64(field, &[1, 0, 0, -1, 1]).eval(field, root)
            ),
            "root must satisfy b⁴ - b³ + 1 = 0"
        );
        let mut acc = field.zero();
        let mut pow = field.one();
        for c in &x.0 {
            let num = bigint_mod_p(c.numer(), p);
            let den = bigint_mod_p(c.denom(), p);
            if den == 0 && num != 0 {
                return Err(Error::BadPrime(p));
            }
            let coeff = if num == 0 {
                field.zero()
            } else {
                let d_inv = field.inv(&FElem::scalar(den))?;
                field.mul(&FElem::scalar(num), &d_inv)
            };
            acc = field.add(&acc, &field.mul(&coeff, &pow));
            pow = field.mul(&pow, root);
        }
        Ok(acc)
    }
}

fn zero_coords() -> [BigRational; 4] {
    [
        BigRational::zero(),
        BigRational::zero(),
        BigRational::zero(),
        BigRational::zero(),
    ]
}

fn bigint_mod_p(n: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut r = n % &pb;
    if r.is_negative() {
        r += &pb;
    }
    r.to_u64().unwrap()
}

/// Solve Σ cᵢ·vᵢ = target on 4-dim coordinates, if solvable.
fn express_in_span(basis: &[NfElem], target: &NfElem) -> Option<Vec<BigRational>> {
    // Gaussian elimination on the 4×(k+1) augmented system.
    let k = basis.len();
    let mut rows: Vec<Vec<BigRational>> = (0..4)
        .map(|coord| {
            let mut row: Vec<BigRational> = basis.iter().map(|v| v.0[coord].clone()).collect();
            row.push(target.0[coord].clone());
            row
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; k];
    let mut r = 0;
    for c in 0..k {
        if let Some(pr) = (r..4).find(|&i| !rows[i][c].is_zero()) {
            rows.swap(r, pr);
            let inv = rows[r][c].recip();
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..4 {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    for j in 0..=k {
                        let t = &rows[r][j] * &f;
                        rows[i][j] -= t;
                    }
                }
            }
            pivot_of_col[c] = r;
            r += 1;
        }
    }
    // Consistent iff no row reads 0 = nonzero.
    for row in rows.iter().skip(r) {
        if !row[k].is_zero() {
            return None;
        }
    }
    let mut sol = vec![BigRational::zero(); k];
    for c in 0..k {
        if pivot_of_col[c] != usize::MAX {
            sol[c] = rows[pivot_of_col[c]][k].clone();
        } else {
            // Underdetermined: a shorter dependency exists; reject so the
            // caller keeps the minimal k.
            return None;
        }
    }
    Some(sol)
}

impl Field for NumberField {
    type Elem = NfElem;

    fn render(&self, a: &NfElem) -> String {
        let mut parts = Vec::new();
        for k in (0..4).rev() {
            let c = &a.0[k];
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            parts.push(match k {
                0 => cs,
                1 if cs == "1" => "b".to_string(),
                1 => format!("({cs})b"),
                k if cs == "1" => format!("b^{k}"),
                k => format!("({cs})b^{k}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    fn zero(&self) -> NfElem {
        NfElem(zero_coords())
    }

    fn one(&self) -> NfElem {
        self.from_i64(1)
    }

    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        let mut c = zero_coords();
        for i in 0..4 {
            c[i] = &a.0[i] + &b.0[i];
        }
        NfElem(c)
    }

    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        let mut c = zero_coords();
        for i in 0..4 {
            c[i] = &a.0[i] - &b.0[i];
        }
        NfElem(c)
    }

    fn neg(&self, a: &NfElem) -> NfElem {
        let mut c = zero_coords();
        for i in 0..4 {
            c[i] = -&a.0[i];
        }
        NfElem(c)
    }

    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        // Schoolbook product then two reduction steps b⁴ = b³ - 1.
        let mut prod = vec![BigRational::zero(); 7];
        for i in 0..4 {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if !b.0[j].is_zero() {
                    let t = &a.0[i] * &b.0[j];
                    prod[i + j] += t;
                }
            }
        }
        for i in (4..7).rev() {
            if prod[i].is_zero() {
                continue;
            }
            let hi = std::mem::replace(&mut prod[i], BigRational::zero());
            prod[i - 1] += &hi; // b^i = b^{i-1} - b^{i-4}
            prod[i - 4] -= hi;
        }
        let mut c = zero_coords();
        c.clone_from_slice(&prod[..4]);
        NfElem(c)
    }

    fn inv(&self, a: &NfElem) -> Result<NfElem> {
        let ap = self.to_poly(a);
        if ap.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Extended Euclid: s·a + t·modulus = gcd = 1 (modulus irreducible).
        let (g, s) = ext_gcd_first(&ap, &self.modulus());
        debug_assert_eq!(g.degree(), Some(0));
        let ginv = Rationals.inv(g.leading().unwrap())?;
        Ok(self.from_poly(&s.scale(&Rationals, &ginv)))
    }

    fn from_i64(&self, n: i64) -> NfElem {
        let mut c = zero_coords();
        c[0] = Rationals.from_i64(n);
        NfElem(c)
    }

    fn characteristic(&self) -> u64 {
        0
    }
}

/// Returns (gcd, s) with s·a ≡ gcd mod m.
fn ext_gcd_first(
    a: &Poly<BigRational>,
    m: &Poly<BigRational>,
) -> (Poly<BigRational>, Poly<BigRational>) {
    let q = Rationals;
    let mut r0 = a.clone();
    let mut r1 = m.clone();
    let mut s0 = Poly::one(&q);
    let mut s1 = Poly::zero();
    while !r1.is_zero() {
        let (quot, rem) = r0.divrem(&q, &r1);
        let s2 = s0.sub(&q, &quot.mul(&q, &s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    (r0, s0)
}

/// The distinguished parameter `a = -2/(b+2)`.
pub fn a_parameter() -> NfElem {
    let nf = NumberField;
    let b_plus_2 = nf.add(&nf.gen(), &nf.from_i64(2));
    let inv = nf.inv(&b_plus_2).expect("b + 2 ≠ 0");
    nf.mul(&nf.from_i64(-2), &inv)
}
