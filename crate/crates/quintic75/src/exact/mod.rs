//! Exact arithmetic foundation: rationals, finite fields `𝔽_{p^e}`, the
//! quartic number field `ℚ(b)` with `b⁴ = b³ - 1`, square classes, and
//! integer utilities (trial-division factoring, integer resultants).

pub mod finite;
pub mod intutil;
pub mod numfield;
pub mod rational;

pub use finite::{FElem, FinField};
pub use intutil::{factor_u64, resultant_int, square_class, SquareClass};
pub use numfield::{NfElem, NumberField};
pub use rational::Rationals;

use crate::{Error, Result};
use num_rational::BigRational;

/// A field given as a context object; elements are plain data and all
/// arithmetic goes through the context. This keeps finite-field moduli and
/// the number-field reduction rule in exactly one place.
pub trait Field: Clone {
    type Elem: Clone + Eq + Ord + std::hash::Hash + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `DivisionByZero` on zero input.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// 0 for characteristic zero, p for finite fields.
    fn characteristic(&self) -> u64;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// p-th root in a perfect field of characteristic p; `None` in
    /// characteristic zero (where it is never needed).
    fn pth_root(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// Canonical ordering of elements, used wherever a deterministic
    /// presentation matters (line lists, orbit representatives). Finite
    /// fields override this to compare numeric element indices.
    fn cmp_elems(&self, a: &Self::Elem, b: &Self::Elem) -> std::cmp::Ordering {
        a.cmp(b)
    }

    /// Short human-readable form for reports and certificates.
    fn render(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }

    /// Exact square test where the field supports one; `None` means the
    /// question is not decided (number-field elements in general).
    fn is_square(&self, _a: &Self::Elem) -> Option<bool> {
        None
    }

    /// All roots of a univariate polynomial, where the field can
    /// enumerate them; `None` where it cannot (characteristic zero).
    fn roots(&self, _f: &crate::poly::Poly<Self::Elem>) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// Runtime-tagged exact scalar, used where the coefficient field is chosen
/// dynamically (CLI parameters, certificate records). Library internals are
/// generic over [`Field`] instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldElement {
    Rational(BigRational),
    NumberField(NfElem),
    Finite { field: FinField, elem: FElem },
}

impl FieldElement {
    fn same_field(&self, other: &FieldElement) -> bool {
        match (self, other) {
            (FieldElement::Rational(_), FieldElement::Rational(_)) => true,
            (FieldElement::NumberField(_), FieldElement::NumberField(_)) => true,
            (FieldElement::Finite { field: f, .. }, FieldElement::Finite { field: g, .. }) => {
                f == g
            }
            _ => false,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        if !self.same_field(other) {
            return Err(Error::FieldMismatch);
        }
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a + b)
            }
            (FieldElement::NumberField(a), FieldElement::NumberField(b)) => {
                FieldElement::NumberField(NumberField.add(a, b))
            }
            (FieldElement::Finite { field, elem: a }, FieldElement::Finite { elem: b, .. }) => {
                FieldElement::Finite {
                    field: field.clone(),
                    elem: field.add(a, b),
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        if !self.same_field(other) {
            return Err(Error::FieldMismatch);
        }
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a * b)
            }
            (FieldElement::NumberField(a), FieldElement::NumberField(b)) => {
                FieldElement::NumberField(NumberField.mul(a, b))
            }
            (FieldElement::Finite { field, elem: a }, FieldElement::Finite { elem: b, .. }) => {
                FieldElement::Finite {
                    field: field.clone(),
                    elem: field.mul(a, b),
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(match self {
            FieldElement::Rational(a) => FieldElement::Rational(Rationals.inv(a)?),
            FieldElement::NumberField(a) => FieldElement::NumberField(NumberField.inv(a)?),
            FieldElement::Finite { field, elem } => FieldElement::Finite {
                field: field.clone(),
                elem: field.inv(elem)?,
            },
        })
    }

    pub fn pow(&self, n: u64) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(Rationals.pow(a, n)),
            FieldElement::NumberField(a) => FieldElement::NumberField(NumberField.pow(a, n)),
            FieldElement::Finite { field, elem } => FieldElement::Finite {
                field: field.clone(),
                elem: field.pow(elem, n),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn tagged_inverse_in_f7() {
        let f7 = FinField::prime(7).unwrap();
        let three = FieldElement::Finite {
            field: f7.clone(),
            elem: f7.from_i64(3),
        };
        let inv = three.inv().unwrap();
        assert_eq!(
            inv,
            FieldElement::Finite {
                field: f7.clone(),
                elem: f7.from_i64(5),
            }
        );
        let prod = three.mul(&inv).unwrap();
        assert_eq!(
            prod,
            FieldElement::Finite {
                field: f7.clone(),
                elem: f7.one(),
            }
        );
    }

    #[test]
    fn tagged_number_field_inverse() {
        // (b+2)·(-2/(b+2)) = -2
        let b_plus_2 = FieldElement::NumberField(NumberField.add(
            &NumberField.gen(),
            &NumberField.from_i64(2),
        ));
        let a = FieldElement::NumberField(numfield::a_parameter());
        let prod = b_plus_2.mul(&a).unwrap();
        assert_eq!(prod, FieldElement::NumberField(NumberField.from_i64(-2)));
    }

    #[test]
    fn tagged_cube_root_in_f4() {
        let f4 = FinField::extension(2, 2).unwrap();
        let omega = f4.primitive_cube_root().unwrap();
        let w = FieldElement::Finite {
            field: f4.clone(),
            elem: omega.clone(),
        };
        let w3 = w.pow(3);
        assert_eq!(
            w3,
            FieldElement::Finite {
                field: f4.clone(),
                elem: f4.one(),
            }
        );
        assert_ne!(omega, f4.one());
    }

    #[test]
    fn mismatched_fields_rejected() {
        let f7 = FinField::prime(7).unwrap();
        let x = FieldElement::Finite {
            field: f7.clone(),
            elem: f7.one(),
        };
        let y = FieldElement::Rational(BigRational::one());
        assert_eq!(x.add(&y), Err(Error::FieldMismatch));
        let f11 = FinField::prime(11).unwrap();
        let z = FieldElement::Finite {
            field: f11.clone(),
            elem: f11.one(),
        };
        assert_eq!(x.mul(&z), Err(Error::FieldMismatch));
    }
}
