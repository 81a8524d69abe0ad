//! The symmetric quintic pencil.
//!
//! Working coordinates are `x0..x3` on ℙ³; the fifth linear form is
//! `ℓ4 = -(x0+x1+x2+x3)`, so the five forms sum to zero. A pencil member is
//!
//! ```text
//! F_λ = e5 - (λ+1)·e2·e3
//! ```
//!
//! with `e_k` the elementary symmetric polynomials in `ℓ0..ℓ4`. On the
//! hyperplane `s1 = 0` this is, up to the factor 5, the classical shape
//! `s5 + (5/6)·λ·s2·s3` in power sums — [`pencil_self_test`] verifies the
//! polynomial identities behind that equivalence in every field we use, so
//! the model stays valid in small characteristic (2 and 3 included) where
//! the power-sum form breaks down.

use crate::exact::finite::{FElem, FinField};
use crate::exact::Field;
use crate::{Error, Result};
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet};

/// Sparse polynomial in `x0..x3`; keys are exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly<T> {
    terms: BTreeMap<[u8; 4], T>,
}

impl<T: Clone + Eq> MultiPoly<T> {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<F: Field<Elem = T>>(field: &F, c: T) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert([0; 4], c);
        }
        MultiPoly { terms }
    }

    /// The linear form `c0·x0 + c1·x1 + c2·x2 + c3·x3`.
    pub fn linear<F: Field<Elem = T>>(field: &F, coeffs: &[T; 4]) -> Self {
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !field.is_zero(c) {
                let mut e = [0u8; 4];
                e[i] = 1;
                terms.insert(e, c.clone());
            }
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 4], &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = match terms.get(e) {
                Some(a) => field.add(a, c),
                None => c.clone(),
            };
            if field.is_zero(&v) {
                terms.remove(e);
            } else {
                terms.insert(*e, v);
            }
        }
        MultiPoly { terms }
    }

    pub fn sub<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn neg<F: Field<Elem = T>>(&self, field: &F) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, field.neg(c)))
                .collect(),
        }
    }

    pub fn scale<F: Field<Elem = T>>(&self, field: &F, c: &T) -> Self {
        if field.is_zero(c) {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (*e, field.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Self {
        let mut terms: BTreeMap<[u8; 4], T> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                let p = field.mul(c1, c2);
                let v = match terms.get(&e) {
                    Some(a) => field.add(a, &p),
                    None => p,
                };
                if field.is_zero(&v) {
                    terms.remove(&e);
                } else {
                    terms.insert(e, v);
                }
            }
        }
        MultiPoly { terms }
    }

    pub fn partial<F: Field<Elem = T>>(&self, field: &F, var: usize) -> Self {
        assert!(var < 4);
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            let d = field.mul(c, &field.from_i64(e[var] as i64));
            if field.is_zero(&d) {
                continue;
            }
            let v = match out.terms.get(&e2) {
                Some(a) => field.add(a, &d),
                None => d,
            };
            if field.is_zero(&v) {
                out.terms.remove(&e2);
            } else {
                out.terms.insert(e2, v);
            }
        }
        out
    }

    pub fn eval<F: Field<Elem = T>>(&self, field: &F, pt: &[T; 4]) -> T {
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in pt.iter().zip(e.iter()) {
                if k > 0 {
                    t = field.mul(&t, &field.pow(x, k as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Substitute a polynomial for each variable.
    pub fn substitute<F: Field<Elem = T>>(&self, field: &F, subs: &[Self; 4]) -> Self {
        let mut acc = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(field, c.clone());
            for (s, &k) in subs.iter().zip(e.iter()) {
                for _ in 0..k {
                    t = t.mul(field, s);
                }
            }
            acc = acc.add(field, &t);
        }
        acc
    }

    /// Total degree of the highest term, or None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }
}

/// The five linear forms `x0, x1, x2, x3, -(x0+x1+x2+x3)`.
pub fn linear_forms<F: Field>(field: &F) -> [MultiPoly<F::Elem>; 5] {
    let z = field.zero();
    let o = field.one();
    let m = field.neg(&o);
    [
        MultiPoly::linear(field, &[o.clone(), z.clone(), z.clone(), z.clone()]),
        MultiPoly::linear(field, &[z.clone(), o.clone(), z.clone(), z.clone()]),
        MultiPoly::linear(field, &[z.clone(), z.clone(), o.clone(), z.clone()]),
        MultiPoly::linear(field, &[z.clone(), z.clone(), z.clone(), o.clone()]),
        MultiPoly::linear(field, &[m.clone(), m.clone(), m.clone(), m]),
    ]
}

/// Elementary symmetric polynomial `e_k` of the five forms.
pub fn elementary_symmetric<F: Field>(field: &F, k: usize) -> MultiPoly<F::Elem> {
    assert!(k <= 5);
    if k == 0 {
        return MultiPoly::constant(field, field.one());
    }
    let forms = linear_forms(field);
    let mut acc = MultiPoly::zero();
    for comb in (0..5).combinations(k) {
        let mut t = MultiPoly::constant(field, field.one());
        for i in comb {
            t = t.mul(field, &forms[i]);
        }
        acc = acc.add(field, &t);
    }
    acc
}

/// Power sum `s_k` of the five forms.
pub fn power_sum<F: Field>(field: &F, k: usize) -> MultiPoly<F::Elem> {
    let forms = linear_forms(field);
    let mut acc = MultiPoly::zero();
    for f in &forms {
        let mut t = MultiPoly::constant(field, field.one());
        for _ in 0..k {
            t = t.mul(field, f);
        }
        acc = acc.add(field, &t);
    }
    acc
}

/// `(s_k, e_k)` in the first `n` of the five forms. With `n = 5` the sum
/// of the forms is zero, so `s_1 = e_1 = 0` there.
pub fn symmetric_basis<F: Field>(
    field: &F,
    n: usize,
    k: usize,
) -> Result<(MultiPoly<F::Elem>, MultiPoly<F::Elem>)> {
    if !(1..=5).contains(&n) || !(1..=n).contains(&k) {
        return Err(Error::BadDegree(k));
    }
    let forms = linear_forms(field);
    let mut s = MultiPoly::zero();
    for f in &forms[..n] {
        let mut t = MultiPoly::constant(field, field.one());
        for _ in 0..k {
            t = t.mul(field, f);
        }
        s = s.add(field, &t);
    }
    let mut e = MultiPoly::zero();
    for comb in (0..n).combinations(k) {
        let mut t = MultiPoly::constant(field, field.one());
        for i in comb {
            t = t.mul(field, &forms[i]);
        }
        e = e.add(field, &t);
    }
    Ok((s, e))
}

/// Act on a polynomial by a permutation of the five coordinates
/// (`x4 = -(x0+x1+x2+x3)` transforms along): substitute `x_i ↦ ℓ_{σ(i)}`.
pub fn permute_coordinates<F: Field>(
    field: &F,
    f: &MultiPoly<F::Elem>,
    sigma: &[usize; 5],
) -> MultiPoly<F::Elem> {
    let forms = linear_forms(field);
    let subs = [
        forms[sigma[0]].clone(),
        forms[sigma[1]].clone(),
        forms[sigma[2]].clone(),
        forms[sigma[3]].clone(),
    ];
    f.substitute(field, &subs)
}

/// Verify the identities tying the `e_k` model to the power-sum pencil:
/// `e1 = 0`, `s2 = -2·e2`, `s3 = 3·e3`, `s5 = 5·e5 - 5·e2·e3`, and
/// `s2·s3 = -6·e2·e3`. Together these give `5·F_λ = (5/6)·λ·s2·s3 + s5`
/// wherever 5 and 6 are invertible, identically in λ.
pub fn pencil_self_test<F: Field>(field: &F) -> Result<()> {
    let fail = |what: &str| {
        Err(Error::BlockFailed(
            "pencil-self-test".into(),
            what.to_string(),
        ))
    };
    let e2 = elementary_symmetric(field, 2);
    let e3 = elementary_symmetric(field, 3);
    let e5 = elementary_symmetric(field, 5);
    if !elementary_symmetric(field, 1).is_zero() {
        return fail("e1 != 0");
    }
    let s2 = power_sum(field, 2);
    if s2 != e2.scale(field, &field.from_i64(-2)) {
        return fail("s2 != -2 e2");
    }
    let s3 = power_sum(field, 3);
    if s3 != e3.scale(field, &field.from_i64(3)) {
        return fail("s3 != 3 e3");
    }
    let e2e3 = e2.mul(field, &e3);
    let s5 = power_sum(field, 5);
    let rhs = e5
        .scale(field, &field.from_i64(5))
        .sub(field, &e2e3.scale(field, &field.from_i64(5)));
    if s5 != rhs {
        return fail("s5 != 5 e5 - 5 e2 e3");
    }
    if s2.mul(field, &s3) != e2e3.scale(field, &field.from_i64(-6)) {
        return fail("s2 s3 != -6 e2 e3");
    }
    Ok(())
}

/// A pencil member with its gradient precomputed.
#[derive(Debug, Clone)]
pub struct PencilModel<F: Field> {
    pub lambda: F::Elem,
    pub f: MultiPoly<F::Elem>,
    pub partials: [MultiPoly<F::Elem>; 4],
}

/// The pencil member `F_λ = e5 - (λ+1)·e2·e3`, after running the model
/// self-test over the given field.
pub fn build_pencil<F: Field>(field: &F, lambda: &F::Elem) -> Result<PencilModel<F>> {
    pencil_self_test(field)?;
    let e2 = elementary_symmetric(field, 2);
    let e3 = elementary_symmetric(field, 3);
    let e5 = elementary_symmetric(field, 5);
    let c = field.add(lambda, &field.one());
    let f = e5.sub(field, &e2.mul(field, &e3).scale(field, &c));
    let partials = gradient(field, &f);
    Ok(PencilModel {
        lambda: lambda.clone(),
        f,
        partials,
    })
}

/// The member at `λ = ∞`: the divisor of the pencil's λ-coefficient,
/// `e2·e3 = 0` (a quadric plus a cubic).
pub fn pencil_member_at_infinity<F: Field>(field: &F) -> MultiPoly<F::Elem> {
    elementary_symmetric(field, 2).mul(field, &elementary_symmetric(field, 3))
}

/// The four partial derivatives of a polynomial.
pub fn gradient<F: Field>(field: &F, f: &MultiPoly<F::Elem>) -> [MultiPoly<F::Elem>; 4] {
    [
        f.partial(field, 0),
        f.partial(field, 1),
        f.partial(field, 2),
        f.partial(field, 3),
    ]
}

/// Normalized representatives of ℙ³ over a finite field, in scan order:
/// `(1,*,*,*), (0,1,*,*), (0,0,1,*), (0,0,0,1)`.
pub fn scan_p3<V>(field: &FinField, budget: u128, mut visit: V) -> Result<u128>
where
    V: FnMut(&[FElem; 4]),
{
    let q = field.q();
    let n = q * q * q + q * q + q + 1;
    if n > budget {
        return Err(Error::BudgetExceeded(n));
    }
    let elems = field.all_elements()?;
    let one = field.one();
    let zero = field.zero();
    for a in &elems {
        for b in &elems {
            for c in &elems {
                visit(&[one, *a, *b, *c]);
            }
        }
    }
    for a in &elems {
        for b in &elems {
            visit(&[zero, one, *a, *b]);
        }
    }
    for a in &elems {
        visit(&[zero, zero, one, *a]);
    }
    visit(&[zero, zero, zero, one]);
    Ok(n)
}

/// All points of ℙ³(F_q) where `f` and its whole gradient vanish.
/// `BudgetExceeded` if the scan would touch more than `budget` points.
pub fn singular_point_search(
    field: &FinField,
    f: &MultiPoly<FElem>,
    budget: u128,
) -> Result<Vec<[FElem; 4]>> {
    let grad = gradient(field, f);
    let mut sing = Vec::new();
    scan_p3(field, budget, |pt| {
        if field.is_zero(&f.eval(field, pt)) && grad.iter().all(|g| field.is_zero(&g.eval(field, pt)))
        {
            sing.push(*pt);
        }
    })?;
    Ok(sing)
}

/// Outcome of a singular-point search up a tower of extensions. An empty
/// `points` list is **evidence** of smoothness, never proof — check
/// `conclusive` before drawing conclusions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularSearch {
    pub p: u64,
    pub e_max: u32,
    /// Level where points first appeared; search stops there.
    pub found_at: Option<u32>,
    /// Element indices of the singular points at `found_at`.
    pub points: Vec<[u128; 4]>,
    /// True iff points were found (a certificate of singularity).
    pub conclusive: bool,
}

/// Search ℙ³(F_{p^e}) for singular points of the member at `λ ∈ F_p`
/// (λ given as a residue), for e = 1, …, e_max, stopping at the first
/// level that exhibits one. `lambda = None` means the member at ∞.
pub fn singular_point_search_tower(
    p: u64,
    lambda: Option<u64>,
    e_max: u32,
    budget: u128,
) -> Result<SingularSearch> {
    for e in 1..=e_max {
        let field = FinField::extension(p, e)?;
        let f = match lambda {
            Some(l) => build_pencil(&field, &FElem::scalar(l % p))?.f,
            None => pencil_member_at_infinity(&field),
        };
        let pts = singular_point_search(&field, &f, budget)?;
        if !pts.is_empty() {
            let points = pts
                .iter()
                .map(|pt| {
                    [
                        field.index_of(&pt[0]),
                        field.index_of(&pt[1]),
                        field.index_of(&pt[2]),
                        field.index_of(&pt[3]),
                    ]
                })
                .collect();
            return Ok(SingularSearch {
                p,
                e_max,
                found_at: Some(e),
                points,
                conclusive: true,
            });
        }
    }
    Ok(SingularSearch {
        p,
        e_max,
        found_at: None,
        points: Vec::new(),
        conclusive: false,
    })
}

/// Is the pencil member at `lambda` smooth over the given finite field?
/// (Only the rational points of the singular locus are inspected.)
pub fn is_smooth_member(field: &FinField, lambda: &FElem, budget: u128) -> Result<bool> {
    let model = build_pencil(field, lambda)?;
    Ok(singular_point_search(field, &model.f, budget)?.is_empty())
}

/// A point of ℙ¹ over ℚ: either a rational number or ∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    Finite(BigRational),
    Infinite,
}

impl Param {
    pub fn from_i64(n: i64) -> Self {
        Param::Finite(BigRational::from(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0);
        Param::Finite(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Param::Finite(x) => write!(f, "{x}"),
            Param::Infinite => write!(f, "oo"),
        }
    }
}

/// `t = λ/(λ+1)`; sends `λ = -1` to ∞ and `λ = ∞` to `1`.
pub fn lambda_to_t(lambda: &Param) -> Param {
    match lambda {
        Param::Infinite => Param::Finite(BigRational::from(BigInt::from(1))),
        Param::Finite(l) => {
            let den = l + BigRational::from(BigInt::from(1));
            if den == BigRational::from(BigInt::from(0)) {
                Param::Infinite
            } else {
                Param::Finite(l / den)
            }
        }
    }
}

/// `λ = t/(1-t)`; sends `t = 1` to ∞ and `t = ∞` to `-1`.
pub fn t_to_lambda(t: &Param) -> Param {
    match t {
        Param::Infinite => Param::Finite(BigRational::from(BigInt::from(-1))),
        Param::Finite(t) => {
            let den = BigRational::from(BigInt::from(1)) - t;
            if den == BigRational::from(BigInt::from(0)) {
                Param::Infinite
            } else {
                Param::Finite(t / den)
            }
        }
    }
}

/// One singular member of the pencil, in both coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularMember {
    pub t: Param,
    pub lambda: Param,
}

/// The six singular members of the pencil over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularParameterTable {
    pub members: Vec<SingularMember>,
}

impl SingularParameterTable {
    /// `t ∈ {-13/12, -1, 1, 3, 51, ∞}` — equivalently
    /// `λ ∈ {-13/25, -1/2, ∞, -3/2, -51/50, -1}`.
    pub fn new() -> Self {
        let ts = [
            Param::from_ratio(-13, 12),
            Param::from_i64(-1),
            Param::from_i64(1),
            Param::from_i64(3),
            Param::from_i64(51),
            Param::Infinite,
        ];
        let members = ts
            .into_iter()
            .map(|t| {
                let lambda = t_to_lambda(&t);
                SingularMember { t, lambda }
            })
            .collect();
        SingularParameterTable { members }
    }
}

impl Default for SingularParameterTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Reductions mod `p` of the singular `t`-values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedParams {
    pub p: u64,
    pub finite: BTreeSet<u64>,
    pub has_infinity: bool,
}

/// Reduce the singular `t`-set mod `p`. A finite `t = n/d` with `p | d`
/// degenerates to ∞.
pub fn reduce_singular_parameters(p: u64) -> Result<ReducedParams> {
    let field = FinField::prime(p)?;
    let mut finite = BTreeSet::new();
    let mut has_infinity = false;
    for m in SingularParameterTable::new().members {
        match &m.t {
            Param::Infinite => has_infinity = true,
            Param::Finite(x) => {
                let num = field.from_bigint(x.numer());
                let den = field.from_bigint(x.denom());
                if field.is_zero(&den) {
                    has_infinity = true;
                } else {
                    let v = field.mul(&num, &field.inv(&den)?);
                    finite.insert(field.index_of(&v) as u64);
                }
            }
        }
    }
    Ok(ReducedParams {
        p,
        finite,
        has_infinity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::numfield::NumberField;
    use crate::exact::rational::{rat, Rationals};

    #[test]
    fn self_test_all_fields() {
        pencil_self_test(&Rationals).unwrap();
        pencil_self_test(&NumberField).unwrap();
        for q in [(2, 4), (3, 1), (5, 1), (7, 1), (19, 1), (23, 1)] {
            let f = FinField::extension(q.0, q.1).unwrap();
            pencil_self_test(&f).unwrap();
        }
    }

    #[test]
    fn e1_vanishes() {
        assert!(elementary_symmetric(&Rationals, 1).is_zero());
    }

    #[test]
    fn multipoly_partial_and_eval() {
        let f7 = FinField::prime(7).unwrap();
        // f = x0²·x1 + 3·x3
        let mut f: MultiPoly<FElem> = MultiPoly::zero();
        f = f.add(
            &f7,
            &MultiPoly::linear(&f7, &[f7.from_i64(0), f7.from_i64(0), f7.from_i64(0), f7.from_i64(3)]),
        );
        let x0 = MultiPoly::linear(&f7, &[f7.one(), f7.zero(), f7.zero(), f7.zero()]);
        let x1 = MultiPoly::linear(&f7, &[f7.zero(), f7.one(), f7.zero(), f7.zero()]);
        f = f.add(&f7, &x0.mul(&f7, &x0).mul(&f7, &x1));
        let d0 = f.partial(&f7, 0); // 2·x0·x1
        let pt = [f7.from_i64(2), f7.from_i64(3), f7.zero(), f7.from_i64(1)];
        assert_eq!(f.eval(&f7, &pt), f7.from_i64(2 * 2 * 3 + 3));
        assert_eq!(d0.eval(&f7, &pt), f7.from_i64(2 * 2 * 3));
    }

    #[test]
    fn smooth_member_mod7() {
        // t(1) = 4 avoids the singular set {1,2,3,6} mod 7
        let f7 = FinField::prime(7).unwrap();
        assert!(is_smooth_member(&f7, &f7.from_i64(1), 1 << 20).unwrap());
    }

    #[test]
    fn singular_member_mod7() {
        // t(2) = 3 lies in the singular set mod 7
        let f7 = FinField::prime(7).unwrap();
        let model = build_pencil(&f7, &f7.from_i64(2)).unwrap();
        let sing = singular_point_search(&f7, &model.f, 1 << 20).unwrap();
        assert_eq!(sing.len(), 10);
        let first = &sing[0];
        assert_eq!(
            [
                f7.index_of(&first[0]),
                f7.index_of(&first[1]),
                f7.index_of(&first[2]),
                f7.index_of(&first[3])
            ],
            [1, 1, 1, 2]
        );
    }

    #[test]
    fn char2_member_is_smooth() {
        let f16 = FinField::extension(2, 4).unwrap();
        assert!(is_smooth_member(&f16, &f16.zero(), 1 << 20).unwrap());
    }

    #[test]
    fn budget_guard() {
        let f7 = FinField::prime(7).unwrap();
        let err = singular_point_search(&f7, &MultiPoly::zero(), 10).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded(400));
    }

    #[test]
    fn symmetric_basis_degree_guard() {
        assert!(symmetric_basis(&Rationals, 5, 2).is_ok());
        assert_eq!(
            symmetric_basis(&Rationals, 5, 6).unwrap_err(),
            Error::BadDegree(6)
        );
        assert_eq!(
            symmetric_basis(&Rationals, 6, 1).unwrap_err(),
            Error::BadDegree(1)
        );
        // s1 and e1 in all five forms vanish identically (the forms sum to 0)
        let (s1, e1) = symmetric_basis(&Rationals, 5, 1).unwrap();
        assert!(s1.is_zero() && e1.is_zero());
        // e5 = product of the five forms: a single check against a direct product
        let (_, e5) = symmetric_basis(&Rationals, 5, 5).unwrap();
        let forms = linear_forms(&Rationals);
        let mut prod = MultiPoly::constant(&Rationals, Rationals.one());
        for f in &forms {
            prod = prod.mul(&Rationals, f);
        }
        assert_eq!(e5, prod);
    }

    #[test]
    fn pencil_is_s5_invariant() {
        let f7 = FinField::prime(7).unwrap();
        let model = build_pencil(&f7, &f7.from_i64(3)).unwrap();
        for sigma in [[1, 0, 2, 3, 4], [4, 1, 2, 3, 0], [1, 2, 3, 4, 0]] {
            assert_eq!(permute_coordinates(&f7, &model.f, &sigma), model.f);
        }
    }

    #[test]
    fn euler_relation() {
        // Σ x_i ∂F/∂x_i = 5F in char 0; identically 0 in char 5
        let model = build_pencil(&Rationals, &rat(2, 3)).unwrap();
        let mut acc: MultiPoly<num_rational::BigRational> = MultiPoly::zero();
        for (i, d) in model.partials.iter().enumerate() {
            let mut c = [Rationals.zero(), Rationals.zero(), Rationals.zero(), Rationals.zero()];
            c[i] = Rationals.one();
            acc = acc.add(&Rationals, &MultiPoly::linear(&Rationals, &c).mul(&Rationals, d));
        }
        assert_eq!(acc, model.f.scale(&Rationals, &rat(5, 1)));

        let f5 = FinField::prime(5).unwrap();
        let m5 = build_pencil(&f5, &f5.from_i64(2)).unwrap();
        let mut acc5: MultiPoly<FElem> = MultiPoly::zero();
        for (i, d) in m5.partials.iter().enumerate() {
            let mut c = [f5.zero(), f5.zero(), f5.zero(), f5.zero()];
            c[i] = f5.one();
            acc5 = acc5.add(&f5, &MultiPoly::linear(&f5, &c).mul(&f5, d));
        }
        assert!(acc5.is_zero());
    }

    #[test]
    fn char5_fixed_point_never_on_surface() {
        // (1:1:1:1) with x4 = -4 ≡ 1: F ≡ 1 mod 5 for every λ
        let f5 = FinField::prime(5).unwrap();
        let pt = [f5.one(), f5.one(), f5.one(), f5.one()];
        for l in 0..5 {
            let model = build_pencil(&f5, &f5.from_i64(l)).unwrap();
            assert_eq!(model.f.eval(&f5, &pt), f5.one());
        }
    }

    #[test]
    fn reducible_member_is_e5() {
        let model = build_pencil(&Rationals, &rat(-1, 1)).unwrap();
        assert_eq!(model.f, elementary_symmetric(&Rationals, 5));
    }

    #[test]
    fn tower_search_levels() {
        // λ = -1 mod 7: the five-plane member, singular over F_7 itself;
        // among its 60 singular points is (0:0:1:-1)
        let s = singular_point_search_tower(7, Some(6), 2, 1 << 22).unwrap();
        assert_eq!(s.found_at, Some(1));
        assert_eq!(s.points.len(), 60);
        assert!(s.points.contains(&[0, 0, 1, 6]));

        // λ = 0 mod 13 is singular already over F_13 (10 points)
        let s13 = singular_point_search_tower(13, Some(0), 1, 1 << 22).unwrap();
        assert!(s13.conclusive);
        assert_eq!(s13.points.len(), 10);
        assert!(s13.points.contains(&[1, 1, 1, 5]));

        // λ = -3/2 ≡ 8 mod 19 has no F_19-rational singular point:
        // inconclusive at e_max = 1, explicitly flagged
        let s19 = singular_point_search_tower(19, Some(8), 1, 1 << 22).unwrap();
        assert!(!s19.conclusive);
        assert_eq!(s19.found_at, None);
    }

    #[test]
    fn infinity_member_quadric_cubic() {
        let inf = pencil_member_at_infinity(&Rationals);
        assert_eq!(inf.total_degree(), Some(5));
        // no rational singular points mod 7 (the e2 = e3 = 0 curve misses F_7)
        let s = singular_point_search_tower(7, None, 1, 1 << 22).unwrap();
        assert!(!s.conclusive);
    }

    #[test]
    fn lambda_t_roundtrip() {
        let table = SingularParameterTable::new();
        assert_eq!(table.members.len(), 6);
        for m in &table.members {
            assert_eq!(lambda_to_t(&m.lambda), m.t);
        }
        // λ = -1 ↔ t = ∞ and λ = ∞ ↔ t = 1
        assert_eq!(lambda_to_t(&Param::from_i64(-1)), Param::Infinite);
        assert_eq!(t_to_lambda(&Param::Infinite), Param::from_i64(-1));
        assert_eq!(lambda_to_t(&Param::Infinite), Param::from_i64(1));
    }

    #[test]
    fn lambda_values_in_table() {
        let table = SingularParameterTable::new();
        let lambdas: Vec<Param> = table.members.iter().map(|m| m.lambda.clone()).collect();
        assert_eq!(
            lambdas,
            vec![
                Param::from_ratio(-13, 25),
                Param::from_ratio(-1, 2),
                Param::Infinite,
                Param::from_ratio(-3, 2),
                Param::from_ratio(-51, 50),
                Param::from_i64(-1),
            ]
        );
    }

    #[test]
    fn reduced_parameters_mod_7_11_41() {
        let r7 = reduce_singular_parameters(7).unwrap();
        assert_eq!(r7.finite, BTreeSet::from([1, 2, 3, 6]));
        assert!(r7.has_infinity);

        let r11 = reduce_singular_parameters(11).unwrap();
        assert!(r11.finite.contains(&3) && r11.finite.contains(&9));

        let r41 = reduce_singular_parameters(41).unwrap();
        assert!(r41.finite.contains(&10));
    }

    #[test]
    fn reduced_parameters_collapse_to_infinity() {
        // 12 ≡ 0 mod 2 and mod 3: t = -13/12 degenerates
        let r2 = reduce_singular_parameters(2).unwrap();
        assert_eq!(r2.finite, BTreeSet::from([1]));
        assert!(r2.has_infinity);
        let r3 = reduce_singular_parameters(3).unwrap();
        assert_eq!(r3.finite, BTreeSet::from([0, 1, 2]));
    }
}
