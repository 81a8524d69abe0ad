//! Dense univariate polynomials over a [`Field`] context.
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial has an empty coefficient vector. All algorithms are exact:
//! Euclidean division, gcd, resultants, characteristic-aware squarefree
//! decomposition, and Lagrange interpolation.

use crate::exact::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Eq> Poly<T> {
    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn new<F: Field<Elem = T>>(field: &F, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = T>>(field: &F, c: T) -> Self {
        Poly::new(field, vec![c])
    }

    pub fn one<F: Field<Elem = T>>(field: &F) -> Self {
        Poly::constant(field, field.one())
    }

    /// The monomial `c·x^k`.
    pub fn monomial<F: Field<Elem = T>>(field: &F, c: T, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    /// Integer coefficients low to high, mapped through the field.
    pub fn from_i64<F: Field<Elem = T>>(field: &F, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the stored range).
    pub fn coeff<F: Field<Elem = T>>(&self, field: &F, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(field.add(&self.coeff(field, i), &other.coeff(field, i)));
        }
        Poly::new(field, out)
    }

    pub fn sub<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(field.sub(&self.coeff(field, i), &other.coeff(field, i)));
        }
        Poly::new(field, out)
    }

    pub fn neg<F: Field<Elem = T>>(&self, field: &F) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = T>>(&self, field: &F, c: &T) -> Self {
        if field.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| field.mul(x, c)).collect(),
        }
    }

    pub fn mul<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Poly::new(field, out)
    }

    pub fn pow<F: Field<Elem = T>>(&self, field: &F, mut n: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(field);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            base = base.mul(field, &base);
            n >>= 1;
        }
        acc
    }

    /// Euclidean division: `self = q·div + r` with `deg r < deg div`.
    /// Panics on division by the zero polynomial.
    pub fn divrem<F: Field<Elem = T>>(&self, field: &F, div: &Self) -> (Self, Self) {
        let d = div.degree().expect("division by zero polynomial");
        let lc_inv = field
            .inv(div.leading().unwrap())
            .expect("leading coefficient is a unit");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![field.zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = field.mul(&rem[i], &lc_inv);
            if field.is_zero(&c) {
                continue;
            }
            quot[i - d] = c.clone();
            for j in 0..=d {
                let t = field.mul(&c, &div.coeffs[j]);
                rem[i - d + j] = field.sub(&rem[i - d + j], &t);
            }
        }
        (Poly::new(field, quot), Poly::new(field, rem))
    }

    /// Quotient of an exact division; panics if the remainder is nonzero.
    pub fn exact_div<F: Field<Elem = T>>(&self, field: &F, div: &Self) -> Self {
        let (q, r) = self.divrem(field, div);
        assert!(r.is_zero(), "division was not exact");
        q
    }

    /// Monic multiple: divide by the leading coefficient.
    pub fn monic<F: Field<Elem = T>>(&self, field: &F) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = field.inv(lc).expect("leading coefficient is a unit");
                self.scale(field, &inv)
            }
        }
    }

    /// Monic gcd via the Euclidean algorithm (gcd(0,0) = 0).
    pub fn gcd<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(field, &b).1;
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn derivative<F: Field<Elem = T>>(&self, field: &F) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let k_elem = field.from_i64(k as i64);
            out.push(field.mul(c, &k_elem));
        }
        Poly::new(field, out)
    }

    /// Horner evaluation.
    /// Human-readable form like `t^2 + (3)t + (1)`, high degree first.
    pub fn render<F: Field<Elem = T>>(&self, field: &F, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if field.is_zero(c) {
                continue;
            }
            let coeff = if *c == field.one() && k > 0 {
                String::new()
            } else {
                format!("({})", field.render(c))
            };
            parts.push(match k {
                0 => coeff,
                1 => format!("{coeff}{var}"),
                _ => format!("{coeff}{var}^{k}"),
            });
        }
        parts.join(" + ")
    }

    pub fn eval<F: Field<Elem = T>>(&self, field: &F, x: &T) -> T {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.mul(&acc, x);
            acc = field.add(&acc, c);
        }
        acc
    }

    /// Multiplicity of `place` (an irreducible or any nonconstant divisor)
    /// in `self`: the largest k with `place^k | self`.
    pub fn ord_at<F: Field<Elem = T>>(&self, field: &F, place: &Self) -> usize {
        assert!(place.degree().map_or(false, |d| d > 0));
        let mut k = 0;
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (q, r) = cur.divrem(field, place);
            if !r.is_zero() {
                break;
            }
            cur = q;
            k += 1;
        }
        k
    }
}

/// Resultant of two polynomials via the Euclidean remainder sequence.
/// `res(f, g) = lc(g)^{deg f} ∏ f(β)` over the roots β of `g`.
/// Returns zero when the inputs share a factor (or either is zero).
pub fn resultant<F: Field>(field: &F, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> F::Elem {
    if f.is_zero() || g.is_zero() {
        return field.zero();
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = field.one();
    loop {
        let db = b.degree().unwrap();
        if db == 0 {
            let da = a.degree().unwrap();
            return field.mul(&acc, &field.pow(&b.coeffs[0], da as u64));
        }
        let r = a.divrem(field, &b).1;
        if r.is_zero() {
            return field.zero();
        }
        let da = a.degree().unwrap();
        let dr = r.degree().unwrap();
        if (da * db) % 2 == 1 {
            acc = field.neg(&acc);
        }
        acc = field.mul(&acc, &field.pow(b.leading().unwrap(), (da - dr) as u64));
        a = b;
        b = r;
    }
}

/// Discriminant `(-1)^{d(d-1)/2}·res(f, f′)/lc(f)` of a polynomial of
/// degree `d ≥ 1`.
pub fn discriminant<F: Field>(field: &F, f: &Poly<F::Elem>) -> F::Elem {
    let d = f.degree().expect("discriminant of zero polynomial");
    assert!(d >= 1);
    let r = resultant(field, f, &f.derivative(field));
    let r = field
        .div(&r, f.leading().unwrap())
        .expect("leading coefficient is a unit");
    if (d * (d - 1) / 2) % 2 == 1 {
        field.neg(&r)
    } else {
        r
    }
}

/// Squarefree decomposition `f = lc · ∏ hᵢ^{mᵢ}` with the `hᵢ` monic,
/// squarefree, pairwise coprime, and `mᵢ` strictly increasing is NOT
/// guaranteed — the list is sorted by multiplicity but multiplicities can
/// repeat only through the characteristic-p branch, which multiplies them
/// by p. Works in characteristic zero and over perfect fields `𝔽_{p^e}`.
pub fn squarefree_decomposition<F: Field>(
    field: &F,
    f: &Poly<F::Elem>,
) -> Vec<(Poly<F::Elem>, usize)> {
    assert!(!f.is_zero());
    let mut out = sqfree_rec(field, &f.monic(field));
    out.sort_by_key(|&(_, m)| m);
    out
}

fn sqfree_rec<F: Field>(field: &F, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let fp = f.derivative(field);
    if fp.is_zero() {
        // f = g(x^p): take coefficient-wise p-th roots and recurse.
        let g = pth_root_poly(field, f);
        for (h, m) in sqfree_rec(field, &g) {
            out.push((h, m * field.characteristic() as usize));
        }
        return out;
    }
    let w0 = f.gcd(field, &fp);
    let mut v = f.exact_div(field, &w0).monic(field);
    let mut w = w0;
    let mut i = 1;
    while v.degree().unwrap_or(0) > 0 {
        let u = v.gcd(field, &w);
        let h = v.exact_div(field, &u).monic(field);
        if h.degree().unwrap_or(0) > 0 {
            out.push((h, i));
        }
        w = w.exact_div(field, &u);
        v = u;
        i += 1;
    }
    // Remaining part has all multiplicities divisible by the characteristic.
    let w = w.monic(field);
    if w.degree().unwrap_or(0) > 0 {
        let g = pth_root_poly(field, &w);
        for (h, m) in sqfree_rec(field, &g) {
            out.push((h, m * field.characteristic() as usize));
        }
    }
    out
}

fn pth_root_poly<F: Field>(field: &F, f: &Poly<F::Elem>) -> Poly<F::Elem> {
    let p = field.characteristic() as usize;
    assert!(p > 0, "p-th root requested in characteristic zero");
    let mut out = Vec::new();
    for (k, c) in f.coeffs.iter().enumerate() {
        if k % p == 0 {
            out.push(field.pth_root(c).expect("perfect field"));
        } else {
            assert!(field.is_zero(c), "polynomial is not a p-th power");
        }
    }
    Poly::new(field, out)
}

/// Partition a squarefree `sf` by the multiplicity of its irreducible
/// factors in `target`: returns `(piece, k)` pairs where every irreducible
/// factor of `piece` divides `target` with multiplicity exactly `k`
/// (capped at `cap`, reported as `cap` beyond it). Pieces multiply to `sf`.
pub fn partition_by_ord<F: Field>(
    field: &F,
    sf: &Poly<F::Elem>,
    target: &Poly<F::Elem>,
    cap: usize,
) -> Vec<(Poly<F::Elem>, usize)> {
    assert!(!target.is_zero());
    let mut out = Vec::new();
    let mut cur = sf.monic(field);
    let mut t = target.clone();
    let mut k = 0;
    while cur.degree().unwrap_or(0) > 0 && k < cap {
        let g = cur.gcd(field, &t);
        let exact_k = cur.exact_div(field, &g).monic(field);
        if exact_k.degree().unwrap_or(0) > 0 {
            out.push((exact_k, k));
        }
        // Divisors of g divide target at least k+1 times; peel one copy.
        if g.degree().unwrap_or(0) > 0 {
            t = t.exact_div(field, &g);
        }
        cur = g;
        k += 1;
    }
    if cur.degree().unwrap_or(0) > 0 {
        out.push((cur, cap));
    }
    out
}

/// Lagrange interpolation through distinct nodes; exact over any field.
pub fn interpolate<F: Field>(field: &F, points: &[(F::Elem, F::Elem)]) -> Poly<F::Elem> {
    let mut acc: Poly<F::Elem> = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly::one(field);
        let mut denom = field.one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let lin = Poly::new(field, vec![field.neg(xj), field.one()]);
            basis = basis.mul(field, &lin);
            denom = field.mul(&denom, &field.sub(xi, xj));
        }
        let c = field.div(yi, &denom).expect("distinct interpolation nodes");
        acc = acc.add(field, &basis.scale(field, &c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, Rationals};
    use crate::exact::FinField;

    #[test]
    fn divrem_roundtrip() {
        let q = Rationals;
        let f = Poly::from_i64(&q, &[1, 0, -3, 0, 1]); // x^4 - 3x^2 + 1
        let g = Poly::from_i64(&q, &[2, 1]); // x + 2
        let (quo, rem) = f.divrem(&q, &g);
        assert_eq!(quo.mul(&q, &g).add(&q, &rem), f);
        assert!(rem.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let q = Rationals;
        let f = Poly::from_i64(&q, &[-1, 0, 1]); // (x-1)(x+1)
        let g = Poly::from_i64(&q, &[-1, 1]).mul(&q, &Poly::from_i64(&q, &[3, 1]));
        let d = f.gcd(&q, &g);
        assert_eq!(d, Poly::from_i64(&q, &[-1, 1]));
    }

    #[test]
    fn resultant_of_quartic_and_linear() {
        let q = Rationals;
        // res_b(b^4 - b^3 + 1, 3b + 2) = 3^4 · f(-2/3) = 121
        let f = Poly::from_i64(&q, &[1, 0, 0, -1, 1]);
        let g = Poly::from_i64(&q, &[2, 3]);
        assert_eq!(resultant(&q, &f, &g), rat(121, 1));
        // swap symmetry: (-1)^{4·1}
        assert_eq!(resultant(&q, &g, &f), rat(121, 1));
    }

    #[test]
    fn resultant_with_common_root_vanishes() {
        let q = Rationals;
        let f = Poly::from_i64(&q, &[-2, 1]).mul(&q, &Poly::from_i64(&q, &[5, 1]));
        let g = Poly::from_i64(&q, &[-2, 1]).mul(&q, &Poly::from_i64(&q, &[7, 3]));
        assert_eq!(resultant(&q, &f, &g), rat(0, 1));
    }

    #[test]
    fn discriminant_quadratic() {
        let q = Rationals;
        // disc(ax^2+bx+c) = b^2-4ac: x^2+3x+1 -> 5
        let f = Poly::from_i64(&q, &[1, 3, 1]);
        assert_eq!(discriminant(&q, &f), rat(5, 1));
    }

    #[test]
    fn squarefree_char_zero() {
        let q = Rationals;
        let a = Poly::from_i64(&q, &[-1, 1]); // x-1
        let b = Poly::from_i64(&q, &[1, 1]); // x+1
        let f = a.pow(&q, 3).mul(&q, &b.pow(&q, 2)).mul(
            &q,
            &Poly::from_i64(&q, &[2, 0, 1]), // x^2+2
        );
        let parts = squarefree_decomposition(&q, &f);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], (Poly::from_i64(&q, &[2, 0, 1]), 1));
        assert_eq!(parts[1], (b, 2));
        assert_eq!(parts[2], (a, 3));
    }

    #[test]
    fn squarefree_char_p_with_pth_powers() {
        let f3 = FinField::prime(3).unwrap();
        // (x-1)^3 (x+1)^2 over F_3: the cube hits the p-th power branch.
        let a = Poly::from_i64(&f3, &[-1, 1]);
        let b = Poly::from_i64(&f3, &[1, 1]);
        let f = a.pow(&f3, 3).mul(&f3, &b.pow(&f3, 2));
        let parts = squarefree_decomposition(&f3, &f);
        let mut rebuilt = Poly::one(&f3);
        for (h, m) in &parts {
            rebuilt = rebuilt.mul(&f3, &h.pow(&f3, *m));
        }
        assert_eq!(rebuilt, f);
        assert!(parts.contains(&(a, 3)));
        assert!(parts.contains(&(b, 2)));
    }

    #[test]
    fn partition_by_ord_splits_correctly() {
        let q = Rationals;
        let p1 = Poly::from_i64(&q, &[-1, 1]); // ord 0 in target
        let p2 = Poly::from_i64(&q, &[1, 1]); // ord 1
        let p3 = Poly::from_i64(&q, &[-2, 1]); // ord 2
        let sf = p1.mul(&q, &p2).mul(&q, &p3);
        let target = p2.mul(&q, &p3.pow(&q, 2)).mul(&q, &Poly::from_i64(&q, &[7, 1]));
        let parts = partition_by_ord(&q, &sf, &target, 4);
        assert_eq!(parts, vec![(p1, 0), (p2, 1), (p3, 2)]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let q = Rationals;
        let f = Poly::from_i64(&q, &[3, -2, 0, 5]);
        let pts: Vec<_> = (0..4)
            .map(|k| {
                let x = rat(k - 1, 1);
                let y = f.eval(&q, &x);
                (x, y)
            })
            .collect();
        assert_eq!(interpolate(&q, &pts), f);
    }
}
