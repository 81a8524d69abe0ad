//! Dense matrices over an exact [`Field`]: reduced row-echelon form (the
//! canonical representative of a row space, used to identify lines), rank,
//! right kernels, and determinants by Gaussian elimination.

use crate::exact::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FMat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Eq> FMat<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        FMat { rows, cols, data }
    }

    pub fn from_rows(rows_data: Vec<Vec<T>>) -> Self {
        let rows = rows_data.len();
        let cols = rows_data.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows * cols);
        for r in rows_data {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        FMat { rows, cols, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// Reduced row-echelon form with pivot columns; ties in pivot choice are
    /// broken by column order, so the result is the canonical basis of the
    /// row space.
    pub fn rref<F: Field<Elem = T>>(&self, field: &F) -> (FMat<T>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !field.is_zero(m.at(i, c))) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = field.inv(m.at(r, c)).expect("nonzero pivot");
            for k in 0..m.cols {
                let v = field.mul(m.at(r, k), &inv);
                m.set(r, k, v);
            }
            for i in 0..m.rows {
                if i != r && !field.is_zero(m.at(i, c)) {
                    let f = m.at(i, c).clone();
                    for k in 0..m.cols {
                        let t = field.mul(m.at(r, k), &f);
                        let v = field.sub(m.at(i, k), &t);
                        m.set(i, k, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = T>>(&self, field: &F) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of the right kernel {x : Ax = 0}, one vector per free column,
    /// in column order (canonical given the RREF).
    pub fn kernel_basis<F: Field<Elem = T>>(&self, field: &F) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (row_idx, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(r.at(row_idx, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant of a square matrix by Gaussian elimination.
    pub fn det<F: Field<Elem = T>>(&self, field: &F) -> T {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = field.one();
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !field.is_zero(m.at(i, c))) else {
                return field.zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = field.neg(&det);
            }
            det = field.mul(&det, m.at(c, c));
            let inv = field.inv(m.at(c, c)).expect("nonzero pivot");
            for i in c + 1..m.rows {
                if field.is_zero(m.at(i, c)) {
                    continue;
                }
                let f = field.mul(m.at(i, c), &inv);
                for k in c..m.cols {
                    let t = field.mul(m.at(c, k), &f);
                    let v = field.sub(m.at(i, k), &t);
                    m.set(i, k, v);
                }
            }
        }
        det
    }
}
