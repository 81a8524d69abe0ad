//! Exact integer linear algebra: fraction-free (Bareiss) rank and
//! determinant, Hermite and Smith normal forms with unimodular transforms,
//! saturated kernels, and discriminants of lattices presented by Gram
//! matrices of (possibly dependent) generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl ZMat {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols);
        ZMat { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        ZMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ZMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64_rows(rows_data: &[Vec<i64>]) -> Self {
        let rows = rows_data.len();
        let cols = rows_data.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows * cols);
        for r in rows_data {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        ZMat { rows, cols, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn transpose(&self) -> ZMat {
        let mut t = ZMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn matmul(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.cols, other.rows);
        let mut out = ZMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.at(k, j);
                    let v = out.at(i, j) + t;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn swap_rows_impl(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols_impl(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }
}

/// Exact rank by fraction-free Gaussian elimination.
pub fn rank_exact(a: &ZMat) -> usize {
    let mut m = a.clone();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows_impl(r, pr);
        for i in r + 1..m.rows {
            for k in c + 1..m.cols {
                // Bareiss one-step: (a_rc·a_ik − a_ic·a_rk) / prev is exact.
                let v = (m.at(r, c) * m.at(i, k) - m.at(i, c) * m.at(r, k)) / &prev;
                m.set(i, k, v);
            }
            m.set(i, c, BigInt::zero());
        }
        prev = m.at(r, c).clone();
        r += 1;
    }
    r
}

/// Exact determinant by Bareiss elimination (signed).
pub fn det_exact(a: &ZMat) -> BigInt {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    for c in 0..n - 1 {
        if m.at(c, c).is_zero() {
            let Some(pr) = (c + 1..n).find(|&i| !m.at(i, c).is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows_impl(c, pr);
            sign = -sign;
        }
        for i in c + 1..n {
            for k in c + 1..n {
                let v = (m.at(c, c) * m.at(i, k) - m.at(i, c) * m.at(c, k)) / &prev;
                m.set(i, k, v);
            }
            m.set(i, c, BigInt::zero());
        }
        prev = m.at(c, c).clone();
    }
    let d = m.at(n - 1, n - 1).clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced to [0, pivot).
pub fn hnf(a: &ZMat) -> ZMat {
    let mut m = a.clone();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // Euclidean column sweep below row r.
        loop {
            let mut best: Option<usize> = None;
            for i in r..m.rows {
                if !m.at(i, c).is_zero()
                    && best.map_or(true, |b| m.at(i, c).abs() < m.at(b, c).abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap_rows_impl(r, b);
            let mut any = false;
            for i in r + 1..m.rows {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let q = div_round(m.at(i, c), m.at(r, c));
                if !q.is_zero() {
                    for k in 0..m.cols {
                        let v = m.at(i, k) - &q * m.at(r, k);
                        m.set(i, k, v);
                    }
                }
                if !m.at(i, c).is_zero() {
                    any = true;
                }
            }
            if !any {
                break;
            }
        }
        if m.at(r, c).is_zero() {
            continue;
        }
        if m.at(r, c).is_negative() {
            for k in 0..m.cols {
                let v = -m.at(r, k);
                m.set(r, k, v);
            }
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..r {
            let q = m.at(i, c).div_floor(m.at(r, c));
            if !q.is_zero() {
                for k in 0..m.cols {
                    let v = m.at(i, k) - &q * m.at(r, k);
                    m.set(i, k, v);
                }
            }
        }
        r += 1;
    }
    m
}

/// Nearest-integer division for Euclidean reduction steps.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = r.abs() * 2;
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Smith normal form with transforms: returns (U, S, V) with U·A·V = S,
/// U and V unimodular, S diagonal with d₁ | d₂ | … ≥ 0.
pub fn snf_with_transforms(a: &ZMat) -> (ZMat, ZMat, ZMat) {
    let mut s = a.clone();
    let mut u = ZMat::identity(a.rows);
    let mut v = ZMat::identity(a.cols);
    let n = a.rows.min(a.cols);

    'outer: loop {
        // Diagonalize with smallest-pivot selection.
        for t in 0..n {
            loop {
                // Find the minimal nonzero |entry| in the trailing block.
                let mut best: Option<(usize, usize)> = None;
                for i in t..s.rows {
                    for j in t..s.cols {
                        if !s.at(i, j).is_zero()
                            && best.map_or(true, |(bi, bj)| s.at(i, j).abs() < s.at(bi, bj).abs())
                        {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else {
                    break;
                };
                s.swap_rows_impl(t, bi);
                u.swap_rows_impl(t, bi);
                s.swap_cols_impl(t, bj);
                v.swap_cols_impl(t, bj);
                let mut clean = true;
                for i in t + 1..s.rows {
                    if s.at(i, t).is_zero() {
                        continue;
                    }
                    let q = div_round(s.at(i, t), s.at(t, t));
                    if !q.is_zero() {
                        for k in 0..s.cols {
                            let val = s.at(i, k) - &q * s.at(t, k);
                            s.set(i, k, val);
                        }
                        for k in 0..u.cols {
                            let val = u.at(i, k) - &q * u.at(t, k);
                            u.set(i, k, val);
                        }
                    }
                    if !s.at(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..s.cols {
                    if s.at(t, j).is_zero() {
                        continue;
                    }
                    let q = div_round(s.at(t, j), s.at(t, t));
                    if !q.is_zero() {
                        for k in 0..s.rows {
                            let val = s.at(k, j) - &q * s.at(k, t);
                            s.set(k, j, val);
                        }
                        for k in 0..v.rows {
                            let val = v.at(k, j) - &q * v.at(k, t);
                            v.set(k, j, val);
                        }
                    }
                    if !s.at(t, j).is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    let row_clear = (t + 1..s.rows).all(|i| s.at(i, t).is_zero());
                    let col_clear = (t + 1..s.cols).all(|j| s.at(t, j).is_zero());
                    if row_clear && col_clear {
                        break;
                    }
                }
            }
        }
        // Positive diagonal.
        for t in 0..n {
            if s.at(t, t).is_negative() {
                for k in 0..s.cols {
                    let val = -s.at(t, k);
                    s.set(t, k, val);
                }
                for k in 0..u.cols {
                    let val = -u.at(t, k);
                    u.set(t, k, val);
                }
            }
        }
        // Move zero diagonal entries to the end.
        for t in 0..n {
            if s.at(t, t).is_zero() {
                if let Some(nz) = (t + 1..n).find(|&k| !s.at(k, k).is_zero()) {
                    s.swap_rows_impl(t, nz);
                    u.swap_rows_impl(t, nz);
                    s.swap_cols_impl(t, nz);
                    v.swap_cols_impl(t, nz);
                }
            }
        }
        // Enforce the divisibility chain; a violation feeds one column add
        // back into the elimination.
        for t in 0..n.saturating_sub(1) {
            let d0 = s.at(t, t).clone();
            let d1 = s.at(t + 1, t + 1).clone();
            if !d0.is_zero() && !d1.is_zero() && !(&d1 % &d0).is_zero() {
                for k in 0..s.rows {
                    let val = s.at(k, t) + s.at(k, t + 1);
                    s.set(k, t, val);
                }
                for k in 0..v.rows {
                    let val = v.at(k, t) + v.at(k, t + 1);
                    v.set(k, t, val);
                }
                continue 'outer;
            }
        }
        break;
    }
    (u, s, v)
}

/// Diagonal of the Smith form, nonzero entries only.
pub fn invariant_factors(a: &ZMat) -> Vec<BigInt> {
    let (_, s, _) = snf_with_transforms(a);
    let n = a.rows.min(a.cols);
    (0..n)
        .map(|i| s.at(i, i).clone())
        .filter(|d| !d.is_zero())
        .collect()
}

/// A lattice presented by the Gram matrix of a (possibly dependent) list of
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLattice {
    pub gram: ZMat,
}

/// Rank and discriminant of the lattice spanned by the generators: the
/// determinant of the pairing induced on ℤⁿ / radical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageLattice {
    pub rank: usize,
    pub disc: BigInt,
}

impl GramLattice {
    pub fn new(gram: ZMat) -> Self {
        assert!(gram.is_symmetric(), "Gram matrix must be symmetric");
        GramLattice { gram }
    }

    pub fn rank(&self) -> usize {
        rank_exact(&self.gram)
    }

    /// Primitive basis of the radical {v : Gv = 0} inside ℤⁿ: the last
    /// n - rank columns of the SNF column transform.
    pub fn kernel_saturated(&self) -> Vec<Vec<BigInt>> {
        let n = self.gram.cols;
        let (_, s, v) = snf_with_transforms(&self.gram);
        let r = (0..n).filter(|&i| !s.at(i, i).is_zero()).count();
        (r..n)
            .map(|j| (0..n).map(|i| v.at(i, j).clone()).collect())
            .collect()
    }

    /// Rank and discriminant of the image lattice. The first `rank` columns
    /// of the SNF column transform complete the saturated kernel to a basis
    /// of ℤⁿ; restricting the pairing to them gives a nonsingular Gram
    /// matrix whose determinant is the discriminant.
    pub fn image_lattice(&self) -> ImageLattice {
        let n = self.gram.cols;
        let (_, s, v) = snf_with_transforms(&self.gram);
        let r = (0..n).filter(|&i| !s.at(i, i).is_zero()).count();
        if r == 0 {
            return ImageLattice {
                rank: 0,
                disc: BigInt::one(),
            };
        }
        let mut c = ZMat::zero(n, r);
        for j in 0..r {
            for i in 0..n {
                c.set(i, j, v.at(i, j).clone());
            }
        }
        let p = c.transpose().matmul(&self.gram).matmul(&c);
        let disc = det_exact(&p);
        debug_assert!(!disc.is_zero());
        debug_assert_eq!(
            disc.abs(),
            (0..r).map(|i| s.at(i, i).clone()).product::<BigInt>(),
            "image disc must equal the product of invariant factors"
        );
        ImageLattice { rank: r, disc }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm(rows: &[Vec<i64>]) -> ZMat {
        ZMat::from_i64_rows(rows)
    }

    #[test]
    fn rank_proportional_rows() {
        assert_eq!(rank_exact(&zm(&[vec![2, 1], vec![4, 2]])), 1);
        assert_eq!(rank_exact(&zm(&[vec![1, 0], vec![0, 1]])), 2);
        assert_eq!(rank_exact(&ZMat::zero(3, 3)), 0);
    }

    #[test]
    fn det_small() {
        assert_eq!(det_exact(&zm(&[vec![1, 2], vec![3, 4]])), BigInt::from(-2));
        assert_eq!(det_exact(&zm(&[vec![2, 1], vec![4, 2]])), BigInt::zero());
        // needs a row swap
        assert_eq!(
            det_exact(&zm(&[vec![0, 1], vec![1, 0]])),
            BigInt::from(-1)
        );
    }

    #[test]
    fn snf_diag_2_3() {
        let a = zm(&[vec![2, 0], vec![0, 3]]);
        let (u, s, v) = snf_with_transforms(&a);
        assert_eq!(s.at(0, 0), &BigInt::from(1));
        assert_eq!(s.at(1, 1), &BigInt::from(6));
        assert_eq!(u.matmul(&a).matmul(&v), s);
        assert_eq!(det_exact(&u).abs(), BigInt::one());
        assert_eq!(det_exact(&v).abs(), BigInt::one());
    }

    #[test]
    fn snf_identity() {
        let a = ZMat::identity(4);
        let (_, s, _) = snf_with_transforms(&a);
        assert_eq!(s, ZMat::identity(4));
    }

    #[test]
    fn hnf_shape() {
        let a = zm(&[vec![4, 6], vec![2, 2]]);
        let h = hnf(&a);
        // pivots positive, below-diagonal zero
        assert_eq!(h.at(1, 0), &BigInt::zero());
        assert!(h.at(0, 0) > &BigInt::zero());
    }

    #[test]
    fn image_lattice_nonsingular_is_det() {
        let g = zm(&[vec![2, 1], vec![1, 2]]);
        let il = GramLattice::new(g.clone()).image_lattice();
        assert_eq!(il.rank, 2);
        assert_eq!(il.disc, det_exact(&g));
    }

    #[test]
    fn image_lattice_with_radical() {
        // Generators e, e, f with e²=2, e·f=1, f²=0 → lattice of rank 2,
        // Gram [[2,1],[1,0]], disc -1; the repeated generator is radical.
        let g = zm(&[vec![2, 2, 1], vec![2, 2, 1], vec![1, 1, 0]]);
        let l = GramLattice::new(g);
        assert_eq!(l.rank(), 2);
        let k = l.kernel_saturated();
        assert_eq!(k.len(), 1);
        let il = l.image_lattice();
        assert_eq!(il.rank, 2);
        assert_eq!(il.disc, BigInt::from(-1));
    }

    #[test]
    fn hyperbolic_plane_disc() {
        let g = zm(&[vec![0, 1], vec![1, 0]]);
        let il = GramLattice::new(g).image_lattice();
        assert_eq!(il.disc, BigInt::from(-1));
    }
}
