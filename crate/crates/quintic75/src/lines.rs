//! Lines on the quintic: the 15 base lines shared by the whole pencil, the
//! 60-line S₅-orbit on `S_a` over `ℚ(b)`, the 60 extra lines on the
//! characteristic-2 model over 𝔽₁₆, line incidence (Gram matrices), the
//! hyperplane/conic divisor rows, and Frobenius permutations.
//!
//! A line is stored as the reduced row-echelon form of two spanning points
//! of ℙ³ (after eliminating `x4 = -(x0+x1+x2+x3)`), which makes equality
//! syntactic. Lists are ordered block by block (base, orbit, extra), each
//! block sorted by the canonical element order of the field, so indices
//! into them are stable and reproducible.

use crate::exact::finite::{FElem, FinField};
use crate::exact::numfield::{NfElem, NumberField};
use crate::exact::Field;
use crate::fmat::FMat;
use crate::pencil::{build_pencil, MultiPoly};
use crate::poly::Poly;
use crate::zlinalg::{rank_exact, ZMat};
use crate::{Error, Result};
use itertools::Itertools;
use num_bigint::BigInt;
use std::cmp::Ordering;

/// A line in ℙ³, as the 2×4 reduced row-echelon basis of its spanning
/// points. Canonical: equal lines have equal `rows`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line<T> {
    rows: [[T; 4]; 2],
}

impl<T: Clone + Eq> Line<T> {
    pub fn basis(&self) -> &[[T; 4]; 2] {
        &self.rows
    }

    /// The two basis points with the fifth coordinate restored.
    pub fn basis_p4<F: Field<Elem = T>>(&self, field: &F) -> [[T; 5]; 2] {
        self.rows.clone().map(|r| {
            let mut s = field.zero();
            for x in &r {
                s = field.add(&s, x);
            }
            let [a, b, c, d] = r;
            [a, b, c, d, field.neg(&s)]
        })
    }
}

/// Canonicalize the span of two points of ℙ³ given in 4 coordinates.
/// `InconsistentSpan` if the points are proportional (no line).
pub fn canonical_line<F: Field>(
    field: &F,
    p1: &[F::Elem; 4],
    p2: &[F::Elem; 4],
) -> Result<Line<F::Elem>> {
    let m = FMat::from_rows(vec![p1.to_vec(), p2.to_vec()]);
    let (r, pivots) = m.rref(field);
    if pivots.len() != 2 {
        return Err(Error::InconsistentSpan);
    }
    let row = |i: usize| -> [F::Elem; 4] {
        [
            r.at(i, 0).clone(),
            r.at(i, 1).clone(),
            r.at(i, 2).clone(),
            r.at(i, 3).clone(),
        ]
    };
    Ok(Line {
        rows: [row(0), row(1)],
    })
}

/// Canonicalize the span of two points given in 5 coordinates summing to 0.
pub fn canonical_line_p4<F: Field>(
    field: &F,
    p1: &[F::Elem; 5],
    p2: &[F::Elem; 5],
) -> Result<Line<F::Elem>> {
    let drop5 = |p: &[F::Elem; 5]| -> [F::Elem; 4] {
        [p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()]
    };
    canonical_line(field, &drop5(p1), &drop5(p2))
}

/// Lexicographic comparison of lines by the field's canonical element
/// order, row 0 before row 1.
pub fn cmp_lines<F: Field>(field: &F, a: &Line<F::Elem>, b: &Line<F::Elem>) -> Ordering {
    for i in 0..2 {
        for j in 0..4 {
            let c = field.cmp_elems(&a.rows[i][j], &b.rows[i][j]);
            if c != Ordering::Equal {
                return c;
            }
        }
    }
    Ordering::Equal
}

fn sort_dedup<F: Field>(field: &F, mut v: Vec<Line<F::Elem>>) -> Vec<Line<F::Elem>> {
    v.sort_by(|a, b| cmp_lines(field, a, b));
    v.dedup();
    v
}

/// Does the line lie in the zero set of the homogeneous polynomial? Exact:
/// expands `f(p1 + u·p2)` as a univariate polynomial and demands that it
/// vanish identically (valid in every characteristic, no sampling).
pub fn line_on_surface<F: Field>(
    field: &F,
    line: &Line<F::Elem>,
    f: &MultiPoly<F::Elem>,
) -> bool {
    let [p1, p2] = &line.rows;
    let mut acc: Poly<F::Elem> = Poly::zero();
    for (e, c) in f.terms() {
        let mut term = Poly::constant(field, c.clone());
        for i in 0..4 {
            let lin = Poly::new(field, vec![p1[i].clone(), p2[i].clone()]);
            for _ in 0..e[i] {
                term = term.mul(field, &lin);
            }
        }
        acc = acc.add(field, &term);
    }
    acc.is_zero()
}

/// The 15 base lines `x_i = x_j + x_k = x_l + x_m = 0`, common to every
/// pencil member. Sorted canonically.
pub fn base_lines<F: Field>(field: &F) -> Vec<Line<F::Elem>> {
    let mut out = Vec::new();
    for i1 in 0..5usize {
        let rest: Vec<usize> = (0..5).filter(|&i| i != i1).collect();
        let point = |a: usize, b: usize| -> [F::Elem; 5] {
            let mut p = [
                field.zero(),
                field.zero(),
                field.zero(),
                field.zero(),
                field.zero(),
            ];
            p[a] = field.one();
            p[b] = field.from_i64(-1);
            p
        };
        for (pair_a, pair_b) in [
            ((rest[0], rest[1]), (rest[2], rest[3])),
            ((rest[0], rest[2]), (rest[1], rest[3])),
            ((rest[0], rest[3]), (rest[1], rest[2])),
        ] {
            let p1 = point(pair_a.0, pair_a.1);
            let p2 = point(pair_b.0, pair_b.1);
            out.push(
                canonical_line_p4(field, &p1, &p2)
                    .expect("base line spans are two-dimensional"),
            );
        }
    }
    sort_dedup(field, out)
}

/// `a = -2/(b+2)` inside any field containing a root `b` of `b⁴-b³+1`.
/// `BadPrime` when `b+2 = 0` (the pole above 5), `NoRootOfB` when `b` is
/// not actually a root.
pub fn a_from_b<F: Field>(field: &F, b: &F::Elem) -> Result<F::Elem> {
    let b4 = field.pow(b, 4);
    let b3 = field.pow(b, 3);
    let val = field.add(&field.sub(&b4, &b3), &field.one());
    if !field.is_zero(&val) {
        return Err(Error::NoRootOfB);
    }
    let den = field.add(b, &field.from_i64(2));
    let inv = field.inv(&den).map_err(|_| {
        let p = field.characteristic();
        Error::BadPrime(p)
    })?;
    Ok(field.mul(&field.from_i64(-2), &inv))
}

/// The 60-line S₅-orbit of `span{(1:-1:b:-b:0), (b-1:1:1-b:0:-1)}` on the
/// member at `λ = a`. Validates the root and that every line lies on `S_a`.
pub fn orbit_lines<F: Field>(field: &F, b: &F::Elem) -> Result<Vec<Line<F::Elem>>> {
    let a = a_from_b(field, b)?;
    let model = build_pencil(field, &a)?;
    let one = field.one();
    let p1 = [
        one.clone(),
        field.neg(&one),
        b.clone(),
        field.neg(b),
        field.zero(),
    ];
    let p2 = [
        field.sub(b, &one),
        one.clone(),
        field.sub(&one, b),
        field.zero(),
        field.neg(&one),
    ];
    let mut out = Vec::new();
    for sigma in (0..5).permutations(5) {
        let q1: Vec<F::Elem> = (0..5).map(|i| p1[sigma[i]].clone()).collect();
        let q2: Vec<F::Elem> = (0..5).map(|i| p2[sigma[i]].clone()).collect();
        let line = canonical_line_p4(
            field,
            &q1.try_into().unwrap(),
            &q2.try_into().unwrap(),
        )?;
        out.push(line);
    }
    let out = sort_dedup(field, out);
    for line in &out {
        if !line_on_surface(field, line, &model.f) {
            return Err(Error::LinesNotOnSurface);
        }
    }
    Ok(out)
}

/// The 75 lines on `S_a`: 15 base then 60 orbit lines.
pub fn lines75<F: Field>(field: &F, b: &F::Elem) -> Result<Vec<Line<F::Elem>>> {
    let mut v = base_lines(field);
    v.extend(orbit_lines(field, b)?);
    Ok(v)
}

/// The 75 lines over `ℚ(b)` with the canonical generator as the root.
pub fn lines75_nf() -> Result<Vec<Line<NfElem>>> {
    let nf = NumberField;
    lines75(&nf, &nf.gen())
}

/// Push a `ℚ(b)`-line into a finite field along `b ↦ root`. The echelon
/// shape is preserved, so the image is already canonical.
pub fn embed_line(
    line: &Line<NfElem>,
    field: &FinField,
    root: &FElem,
) -> Result<Line<FElem>> {
    let nf = NumberField;
    let mut rows = [[FElem::scalar(0); 4]; 2];
    for i in 0..2 {
        for j in 0..4 {
            rows[i][j] = nf.embed(&line.basis()[i][j], field, root)?;
        }
    }
    let out = Line { rows };
    debug_assert_eq!(
        canonical_line(field, &out.rows[0].clone(), &out.rows[1].clone())?,
        out
    );
    Ok(out)
}

/// Intersection pairing on a smooth quintic: `L·L = -3`; distinct lines
/// pair 1 exactly if they meet (the 4×4 determinant of their stacked bases
/// vanishes), else 0.
pub fn pair<F: Field>(field: &F, l1: &Line<F::Elem>, l2: &Line<F::Elem>) -> i64 {
    if l1 == l2 {
        return -3;
    }
    let rows: Vec<Vec<F::Elem>> = l1
        .rows
        .iter()
        .chain(l2.rows.iter())
        .map(|r| r.to_vec())
        .collect();
    let det = FMat::from_rows(rows).det(field);
    if field.is_zero(&det) {
        1
    } else {
        0
    }
}

/// Symmetric Gram matrix of a line list under [`pair`].
pub fn gram<F: Field>(field: &F, lines: &[Line<F::Elem>]) -> ZMat {
    let n = lines.len();
    let mut g = ZMat::zero(n, n);
    for i in 0..n {
        g.set(i, i, BigInt::from(-3));
        for j in i + 1..n {
            let v = BigInt::from(pair(field, &lines[i], &lines[j]));
            g.set(i, j, v.clone());
            g.set(j, i, v);
        }
    }
    g
}

/// A divisor class recorded against a fixed ordered line list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClassRow {
    pub label: String,
    /// Pairings against the lines, in list order.
    pub pairings: Vec<i64>,
    pub self_int: i64,
}

/// Index of the coordinate plane `x_i = 0` containing a base line, if any.
fn base_plane<F: Field>(field: &F, line: &Line<F::Elem>) -> Option<usize> {
    let p4 = line.basis_p4(field);
    (0..5).find(|&i| field.is_zero(&p4[0][i]) && field.is_zero(&p4[1][i]))
}

/// Rows for the hyperplane class `H` and the five conics
/// `C_i = H - (the three base lines in the plane x_i = 0)`, together with
/// a consistency check: adjoining the `3H` and `3C_i` rows to the Gram
/// matrix must leave the rank at 40, since those classes lie in the span
/// of the lines. `InconsistentSpan` otherwise.
pub fn hyperplane_and_conics<F: Field>(
    field: &F,
    lines: &[Line<F::Elem>],
) -> Result<Vec<DivisorClassRow>> {
    assert_eq!(lines.len(), 75, "expects the full 75-line list");
    let g = gram(field, lines);
    let base = base_lines(field);

    // the three base lines inside each coordinate plane
    let mut planes: Vec<Vec<usize>> = vec![Vec::new(); 5];
    for (idx, line) in lines.iter().enumerate() {
        if base.contains(line) {
            let pl = base_plane(field, line).expect("base lines lie in coordinate planes");
            planes[pl].push(idx);
        }
    }
    if planes.iter().any(|t| t.len() != 3) {
        return Err(Error::InconsistentSpan);
    }

    let gi = |i: usize, j: usize| -> i64 {
        let v: BigInt = g.at(i, j).clone();
        i64::try_from(&v).expect("gram entries are small")
    };

    let h_row = DivisorClassRow {
        label: "H".into(),
        pairings: vec![1; 75],
        self_int: 5,
    };
    let mut rows = vec![h_row];
    for (k, trip) in planes.iter().enumerate() {
        let pairings: Vec<i64> = (0..75)
            .map(|j| 1 - trip.iter().map(|&t| gi(t, j)).sum::<i64>())
            .collect();
        rows.push(DivisorClassRow {
            label: format!("C{k}"),
            pairings,
            self_int: -4,
        });
    }

    // Extended Gram with 3H and 3C_i adjoined; the span must not grow.
    let n = 81;
    let mut e = ZMat::zero(n, n);
    for i in 0..75 {
        for j in 0..75 {
            e.set(i, j, g.at(i, j).clone());
        }
    }
    for i in 0..75 {
        e.set(75, i, BigInt::from(3));
        e.set(i, 75, BigInt::from(3));
    }
    e.set(75, 75, BigInt::from(45));
    for k in 0..5 {
        let ck = 76 + k;
        for j in 0..75 {
            let v = BigInt::from(3 * rows[k + 1].pairings[j]);
            e.set(ck, j, v.clone());
            e.set(j, ck, v);
        }
        e.set(ck, 75, BigInt::from(18));
        e.set(75, ck, BigInt::from(18));
    }
    for k in 0..5 {
        for k2 in 0..5 {
            let (ck, ck2) = (76 + k, 76 + k2);
            if k == k2 {
                e.set(ck, ck, BigInt::from(-36));
            } else {
                let s: i64 = planes[k]
                    .iter()
                    .flat_map(|&a| planes[k2].iter().map(move |&c| gi(a, c)))
                    .sum();
                e.set(ck, ck2, BigInt::from(9 * (-1 + s)));
            }
        }
    }
    if rank_exact(&e) != rank_exact(&g) {
        return Err(Error::InconsistentSpan);
    }
    Ok(rows)
}

/// Families of lines on the characteristic-2 model over 𝔽₁₆.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Char2Lines {
    /// 15 base, then 60 orbit, then 60 extra lines; each block sorted.
    pub lines: Vec<Line<FElem>>,
    /// S₅-orbit sizes of the two extra-line representatives.
    pub fam1_size: usize,
    pub fam2_size: usize,
    /// Index (into `lines`) of the canonical representative of the second
    /// extra family, whose R-orbit sum is the class `D₂`.
    pub l2_index: usize,
}

/// Kernel line of three independent linear forms on the five coordinates.
fn kernel_line(field: &FinField, eqs: &[[FElem; 5]; 3]) -> Result<Line<FElem>> {
    let m = FMat::from_rows(eqs.iter().map(|r| r.to_vec()).collect());
    let k = m.kernel_basis(field);
    if k.len() != 2 {
        return Err(Error::InconsistentSpan);
    }
    let to5 = |v: &Vec<FElem>| -> [FElem; 5] { [v[0], v[1], v[2], v[3], v[4]] };
    canonical_line_p4(field, &to5(&k[0]), &to5(&k[1]))
}

/// The two extra-line families over 𝔽₁₆ (characteristic 2, `a ≡ 0`):
/// S₅-orbits of
/// `ℓ1: s1 = x0+x1 = x2+ω·x3 = 0` and
/// `ℓ2: s1 = x0+x1+ω²·x4 = x0+x2+ω·x3 = 0`
/// with ω a primitive cube root of unity. Returns (orbit of ℓ1, orbit of ℓ2).
pub fn char2_extra_families(
    field: &FinField,
) -> Result<(Vec<Line<FElem>>, Vec<Line<FElem>>)> {
    if field.p() != 2 || field.e() != 4 {
        return Err(Error::BadDegree(field.e() as usize));
    }
    let w = field.primitive_cube_root()?;
    let w2 = field.mul(&w, &w);
    let o = field.one();
    let z = field.zero();
    let s1 = [o, o, o, o, o];
    let l1_eqs = [s1, [o, o, z, z, z], [z, z, o, w, z]];
    let l2_eqs = [s1, [o, o, z, z, w2], [o, z, o, w, z]];

    let permute_eq = |eq: &[FElem; 5], sigma: &[usize]| -> [FElem; 5] {
        // substituting x_i ↦ x_{σ(i)} turns Σ c_i x_i into Σ c_i x_{σ(i)}
        let mut out = [z; 5];
        for i in 0..5 {
            out[sigma[i]] = eq[i];
        }
        out
    };

    let mut fam1 = Vec::new();
    let mut fam2 = Vec::new();
    for sigma in (0..5).permutations(5) {
        let e1 = [
            permute_eq(&l1_eqs[0], &sigma),
            permute_eq(&l1_eqs[1], &sigma),
            permute_eq(&l1_eqs[2], &sigma),
        ];
        fam1.push(kernel_line(field, &e1)?);
        let e2 = [
            permute_eq(&l2_eqs[0], &sigma),
            permute_eq(&l2_eqs[1], &sigma),
            permute_eq(&l2_eqs[2], &sigma),
        ];
        fam2.push(kernel_line(field, &e2)?);
    }
    Ok((sort_dedup(field, fam1), sort_dedup(field, fam2)))
}

/// All 135 lines on the characteristic-2 model: 15 base + 60 orbit (for
/// the canonical root of `b⁴+b³+1` in 𝔽₁₆) + 60 extra, each verified to
/// lie on the surface.
pub fn char2_lines(field: &FinField) -> Result<Char2Lines> {
    if field.p() != 2 || field.e() != 4 {
        return Err(Error::BadDegree(field.e() as usize));
    }
    let b = *field
        .b_roots()?
        .first()
        .ok_or(Error::NoRootOfB)?;
    let base = base_lines(field);
    let orbit = orbit_lines(field, &b)?;
    let (fam1, fam2) = char2_extra_families(field)?;
    let l2_canon = {
        let w = field.primitive_cube_root()?;
        let w2 = field.mul(&w, &w);
        let o = field.one();
        let z = field.zero();
        kernel_line(
            field,
            &[[o, o, o, o, o], [o, o, z, z, w2], [o, z, o, w, z]],
        )?
    };
    let mut extra: Vec<Line<FElem>> = fam1.iter().chain(fam2.iter()).cloned().collect();
    extra = sort_dedup(field, extra);

    let model = build_pencil(field, &field.zero())?;
    for l in base.iter().chain(orbit.iter()).chain(extra.iter()) {
        if !line_on_surface(field, l, &model.f) {
            return Err(Error::LinesNotOnSurface);
        }
    }

    let mut lines = base;
    lines.extend(orbit);
    lines.extend(extra);
    let mut seen = std::collections::HashSet::new();
    if !lines.iter().all(|l| seen.insert(l.clone())) {
        return Err(Error::InconsistentSpan);
    }
    let l2_index = lines
        .iter()
        .position(|l| *l == l2_canon)
        .ok_or(Error::InconsistentSpan)?;
    Ok(Char2Lines {
        lines,
        fam1_size: fam1.len(),
        fam2_size: fam2.len(),
        l2_index,
    })
}

/// The permutation induced on a line list by the `q0`-power Frobenius.
/// `NotClosedUnderFrobenius` if some image leaves the list.
pub fn frobenius_permutation(
    field: &FinField,
    lines: &[Line<FElem>],
    q0: u128,
) -> Result<Vec<usize>> {
    // q0 must be a power of the characteristic for x ↦ x^q0 to be a field map
    let p = field.p() as u128;
    let mut q = q0;
    while q > 1 && q % p == 0 {
        q /= p;
    }
    assert_eq!(q, 1, "q0 must be a power of the characteristic");

    let mut perm = Vec::with_capacity(lines.len());
    for l in lines {
        let r = l.basis();
        let f = |x: &FElem| field.frobenius(x, q0);
        let img = canonical_line(
            field,
            &[f(&r[0][0]), f(&r[0][1]), f(&r[0][2]), f(&r[0][3])],
            &[f(&r[1][0]), f(&r[1][1]), f(&r[1][2]), f(&r[1][3])],
        )?;
        match lines.iter().position(|m| *m == img) {
            Some(i) => perm.push(i),
            None => return Err(Error::NotClosedUnderFrobenius),
        }
    }
    Ok(perm)
}

/// Apply a permutation of the five coordinates to a line.
pub fn act_line<F: Field>(
    field: &F,
    sigma: &[usize; 5],
    line: &Line<F::Elem>,
) -> Line<F::Elem> {
    let p4 = line.basis_p4(field);
    let imgs: Vec<[F::Elem; 5]> = p4
        .iter()
        .map(|pt| {
            let mut out: [F::Elem; 5] = [
                field.zero(),
                field.zero(),
                field.zero(),
                field.zero(),
                field.zero(),
            ];
            for i in 0..5 {
                out[i] = pt[sigma[i]].clone();
            }
            out
        })
        .collect();
    canonical_line_p4(field, &imgs[0], &imgs[1]).expect("permuted line stays a line")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::Rationals;
    use crate::zlinalg::rank_exact;

    #[test]
    fn base_lines_count_and_membership() {
        let base = base_lines(&Rationals);
        assert_eq!(base.len(), 15);
        for lam in [0i64, 7, -4] {
            let model = build_pencil(&Rationals, &Rationals.from_i64(lam)).unwrap();
            for l in &base {
                assert!(line_on_surface(&Rationals, l, &model.f));
            }
        }
    }

    #[test]
    fn named_base_lines_meet() {
        // x0 = x1+x2 = x3+x4 = 0  and  x1 = x0+x2 = x3+x4 = 0 share
        // (0:0:0:1:-1)
        let q = Rationals;
        let mk = |j: usize, k: usize, l: usize, m: usize| {
            let mut p1 = [q.zero(), q.zero(), q.zero(), q.zero(), q.zero()];
            p1[j] = q.one();
            p1[k] = q.from_i64(-1);
            let mut p2 = [q.zero(), q.zero(), q.zero(), q.zero(), q.zero()];
            p2[l] = q.one();
            p2[m] = q.from_i64(-1);
            canonical_line_p4(&q, &p1, &p2).unwrap()
        };
        let l1 = mk(1, 2, 3, 4);
        let l2 = mk(0, 2, 3, 4);
        assert_eq!(pair(&q, &l1, &l2), 1);
        // a genuinely skew pair: x0=0,{13}{24}  vs  x1=0,{02}{34}
        let l3 = mk(1, 3, 2, 4);
        let l4 = mk(0, 2, 3, 4);
        assert_eq!(pair(&q, &l3, &l4), 0);
        assert_eq!(pair(&q, &l1, &l1), -3);
    }

    #[test]
    fn canonicalization_direction_independent() {
        let q = Rationals;
        let p1 = [q.from_i64(1), q.from_i64(-1), q.zero(), q.zero()];
        let p2 = [q.zero(), q.zero(), q.from_i64(1), q.from_i64(-1)];
        let l12 = canonical_line(&q, &p1, &p2).unwrap();
        let l21 = canonical_line(&q, &p2, &p1).unwrap();
        assert_eq!(l12, l21);
        // a different basis of the same span
        let sum = [q.from_i64(1), q.from_i64(-1), q.from_i64(1), q.from_i64(-1)];
        let l3 = canonical_line(&q, &p1, &sum).unwrap();
        assert_eq!(l12, l3);
    }

    #[test]
    fn degenerate_span_rejected() {
        let q = Rationals;
        let p = [q.one(), q.zero(), q.zero(), q.zero()];
        let p2 = [q.from_i64(2), q.zero(), q.zero(), q.zero()];
        assert_eq!(canonical_line(&q, &p, &p2).unwrap_err(), Error::InconsistentSpan);
    }

    #[test]
    fn orbit_lines_over_number_field() {
        let nf = NumberField;
        let orbit = orbit_lines(&nf, &nf.gen()).unwrap();
        assert_eq!(orbit.len(), 60);
        let all = lines75_nf().unwrap();
        assert_eq!(all.len(), 75);
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 75);
    }

    #[test]
    fn gram75_rank_40_over_f19() {
        let f19 = FinField::prime(19).unwrap();
        let all = lines75(&f19, &FElem::scalar(9)).unwrap();
        assert_eq!(all.len(), 75);
        let g = gram(&f19, &all);
        assert_eq!(rank_exact(&g), 40);
    }

    #[test]
    fn wrong_root_rejected() {
        let f19 = FinField::prime(19).unwrap();
        assert_eq!(
            orbit_lines(&f19, &FElem::scalar(2)).unwrap_err(),
            Error::NoRootOfB
        );
    }

    #[test]
    fn pole_above_5_rejected() {
        let f5 = FinField::prime(5).unwrap();
        // b = 3 is a root of b⁴-b³+1 mod 5, but b+2 ≡ 0 there
        assert_eq!(
            orbit_lines(&f5, &FElem::scalar(3)).unwrap_err(),
            Error::BadPrime(5)
        );
    }

    #[test]
    fn nf_lines_match_f19_reduction() {
        let f19 = FinField::prime(19).unwrap();
        let root = FElem::scalar(9);
        let nf_lines = lines75_nf().unwrap();
        let f_lines = lines75(&f19, &root).unwrap();
        // reduction mod 19 is a bijection of the two 75-line lists…
        let perm: Vec<usize> = nf_lines
            .iter()
            .map(|l| {
                let img = embed_line(l, &f19, &root).unwrap();
                f_lines
                    .iter()
                    .position(|m| *m == img)
                    .expect("embedded line is in the reduction's list")
            })
            .collect();
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..75).collect::<Vec<_>>());
        // …and it preserves the intersection pairing entry by entry.
        let nf = NumberField;
        let g_nf = gram(&nf, &nf_lines);
        let g_f = gram(&f19, &f_lines);
        for i in 0..75 {
            for j in 0..75 {
                assert_eq!(g_nf.at(i, j), g_f.at(perm[i], perm[j]));
            }
        }
        assert_eq!(rank_exact(&g_nf), 40);
        // every line is rational over 𝔽₁₉, so Frobenius fixes each one
        let fr = frobenius_permutation(&f19, &f_lines, 19).unwrap();
        assert_eq!(fr, (0..75).collect::<Vec<_>>());
    }

    #[test]
    fn hyperplane_and_conic_rows() {
        let f19 = FinField::prime(19).unwrap();
        let all = lines75(&f19, &FElem::scalar(9)).unwrap();
        let rows = hyperplane_and_conics(&f19, &all).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].label, "H");
        assert_eq!(rows[0].self_int, 5);
        assert!(rows[0].pairings.iter().all(|&x| x == 1));
        for k in 0..5 {
            assert_eq!(rows[k + 1].label, format!("C{k}"));
            assert_eq!(rows[k + 1].self_int, -4);
            // the conic meets exactly the three base lines of its plane
            // with multiplicity 2; all other pairings are ≤ 1
            assert_eq!(rows[k + 1].pairings.iter().filter(|&&x| x == 2).count(), 3);
            assert!(rows[k + 1].pairings.iter().all(|&x| x <= 2));
        }
    }

    #[test]
    fn char2_line_families() {
        let f16 = FinField::extension(2, 4).unwrap();
        let c = char2_lines(&f16).unwrap();
        assert_eq!(c.lines.len(), 135);
        assert_eq!((c.fam1_size, c.fam2_size), (20, 40));
        assert!([83, 113, 115, 121, 126].contains(&c.l2_index));
        let g = gram(&f16, &c.lines);
        assert_eq!(rank_exact(&g), 53);
    }

    #[test]
    fn char2_frobenius_closure() {
        let f16 = FinField::extension(2, 4).unwrap();
        let c = char2_lines(&f16).unwrap();
        // the full 135 are not stable under x ↦ x²: the orbit block moves
        // to the orbit of a conjugate root of b⁴+b³+1
        assert_eq!(
            frobenius_permutation(&f16, &c.lines, 2).unwrap_err(),
            Error::NotClosedUnderFrobenius
        );
        // …but they are all defined over 𝔽₁₆
        let id = frobenius_permutation(&f16, &c.lines, 16).unwrap();
        assert_eq!(id, (0..135).collect::<Vec<_>>());
        // base + extra lines: stable under x ↦ x², an involution fixing
        // exactly the 15 base lines
        let mut be: Vec<Line<FElem>> = c.lines[..15].to_vec();
        be.extend_from_slice(&c.lines[75..]);
        let fr = frobenius_permutation(&f16, &be, 2).unwrap();
        let square: Vec<usize> = (0..75).map(|i| fr[fr[i]]).collect();
        assert_eq!(square, (0..75).collect::<Vec<_>>());
        assert_ne!(fr, (0..75).collect::<Vec<_>>());
        assert_eq!(
            fr.iter().enumerate().filter(|&(i, &j)| i == j).count(),
            15
        );
    }

    #[test]
    fn s5_invariance_of_pairing() {
        let f19 = FinField::prime(19).unwrap();
        let all = lines75(&f19, &FElem::scalar(9)).unwrap();
        let sigma = [2usize, 0, 4, 1, 3];
        for (i, j) in [(0, 1), (3, 40), (17, 60), (74, 2)] {
            let a = act_line(&f19, &sigma, &all[i]);
            let b = act_line(&f19, &sigma, &all[j]);
            assert_eq!(pair(&f19, &a, &b), pair(&f19, &all[i], &all[j]));
        }
    }
}
