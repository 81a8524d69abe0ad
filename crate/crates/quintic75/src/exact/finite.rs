//! Finite fields `𝔽_{p^e}` for `e ≤ 4`, with a deterministic choice of
//! modulus: the lexicographically smallest monic irreducible polynomial of
//! degree `e` over `𝔽_p`, comparing coefficient tuples from degree `e-1`
//! down to the constant term. This makes every field — and hence every
//! root choice, line coordinate, and point count — reproducible across runs.

use super::Field;
use crate::poly::Poly;
use crate::{Error, Result};

/// Elements are polynomials in the field generator with coefficients
/// `< p`, stored little-endian; unused slots are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FElem(pub [u64; 4]);

impl FElem {
    pub fn scalar(c: u64) -> FElem {
        FElem([c, 0, 0, 0])
    }
}

/// The field `𝔽_{p^e}` as a context object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinField {
    p: u64,
    e: u32,
    /// Monic modulus of degree e: coefficients of `1, x, …, x^{e-1}`
    /// (the leading 1 is implicit).
    modulus: [u64; 4],
}

/// Largest field size accepted for exhaustive element scans.
pub const SCAN_LIMIT: u128 = 1 << 21;

impl FinField {
    /// The prime field `𝔽_p`.
    pub fn prime(p: u64) -> Result<FinField> {
        Self::extension(p, 1)
    }

    /// `𝔽_{p^e}` with the canonical modulus. `e ≤ 4`; construction scans
    /// `𝔽_p` for roots, so `p` itself must be scannable.
    pub fn extension(p: u64, e: u32) -> Result<FinField> {
        if !(1..=4).contains(&e) {
            return Err(Error::BadDegree(e as usize));
        }
        if p as u128 > SCAN_LIMIT {
            return Err(Error::FieldTooLarge(p as u128));
        }
        if !is_prime_u64(p) {
            return Err(Error::BadDegree(p as usize));
        }
        if e == 1 {
            return Ok(FinField {
                p,
                e,
                modulus: [0; 4],
            });
        }
        // Enumerate candidate moduli in lexicographic order of
        // (c_{e-1}, …, c_0): that is numeric order of Σ c_i p^i.
        let total = (p as u128).pow(e);
        for n in 0..total {
            let mut c = [0u64; 4];
            let mut m = n;
            for slot in c.iter_mut().take(e as usize) {
                *slot = (m % p as u128) as u64;
                m /= p as u128;
            }
            let cand = FinField { p, e, modulus: c };
            if cand.modulus_is_irreducible() {
                return Ok(cand);
            }
        }
        unreachable!("irreducible polynomials of degree {e} exist over F_{p}")
    }

    fn modulus_is_irreducible(&self) -> bool {
        // No roots in F_p rules out degrees 2 and 3 entirely; degree 4
        // additionally needs no irreducible quadratic factor, i.e.
        // gcd(x^{p²} - x, f) = 1.
        let e = self.e;
        debug_assert!(e >= 2);
        for x in 0..self.p {
            let mut acc: u128 = 1;
            // modulus evaluated at x: x^e + Σ c_i x^i
            let mut val: u128 = 0;
            for i in 0..e {
                val = (val + self.modulus[i as usize] as u128 * acc) % self.p as u128;
                acc = acc * x as u128 % self.p as u128;
            }
            val = (val + acc) % self.p as u128;
            if val == 0 {
                return false;
            }
        }
        if e < 4 {
            return true;
        }
        // x^{p²} mod f, by square-and-multiply in F_p[x]/(f).
        let xq2 = self.pow_of_x_mod((self.p as u128) * (self.p as u128));
        // gcd(xq2 - x, f) over F_p
        let fp = FinField {
            p: self.p,
            e: 1,
            modulus: [0; 4],
        };
        let mut diff: Vec<FElem> = xq2.0.iter().map(|&c| FElem::scalar(c)).collect();
        diff[1] = fp.sub(&diff[1], &fp.one());
        let diff_poly = Poly::new(&fp, diff);
        let mut fcoeffs: Vec<FElem> = self.modulus[..4].iter().map(|&c| FElem::scalar(c)).collect();
        fcoeffs.push(fp.one());
        let f_poly = Poly::new(&fp, fcoeffs);
        let g = diff_poly.gcd(&fp, &f_poly);
        g.degree() == Some(0)
    }

    /// x^n in F_p[x]/(modulus), n arbitrary (u128).
    fn pow_of_x_mod(&self, mut n: u128) -> FElem {
        let x = self.gen_raw();
        let mut base = x;
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

    fn gen_raw(&self) -> FElem {
        if self.e == 1 {
            FElem::scalar(1 % self.p)
        } else {
            FElem([0, 1, 0, 0])
        }
    }

    /// The distinguished generator: the class of `x` for `e ≥ 2`, or `1`.
    pub fn gen(&self) -> FElem {
        self.gen_raw()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u128 {
        (self.p as u128).pow(self.e)
    }

    /// Coefficients of the monic modulus, constant first, leading 1 last.
    pub fn modulus_coeffs(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.modulus[..self.e as usize].to_vec();
        v.push(1);
        v
    }

    /// Reduction of an integer into the prime subfield.
    pub fn from_bigint(&self, n: &num_bigint::BigInt) -> FElem {
        use num_integer::Integer;
        let p = num_bigint::BigInt::from(self.p);
        let r = n.mod_floor(&p);
        let digits = r.to_u64_digits().1;
        FElem::scalar(digits.first().copied().unwrap_or(0))
    }

    /// Bijection {0, …, q-1} → field, little-endian base-p digits.
    pub fn elem_at(&self, idx: u128) -> FElem {
        debug_assert!(idx < self.q());
        let mut c = [0u64; 4];
        let mut m = idx;
        for slot in c.iter_mut().take(self.e as usize) {
            *slot = (m % self.p as u128) as u64;
            m /= self.p as u128;
        }
        FElem(c)
    }

    /// Inverse of [`elem_at`].
    pub fn index_of(&self, x: &FElem) -> u128 {
        let mut idx: u128 = 0;
        for i in (0..self.e as usize).rev() {
            idx = idx * self.p as u128 + x.0[i] as u128;
        }
        idx
    }

    /// All field elements in index order; guarded by [`SCAN_LIMIT`].
    pub fn all_elements(&self) -> Result<Vec<FElem>> {
        let q = self.q();
        if q > SCAN_LIMIT {
            return Err(Error::FieldTooLarge(q));
        }
        Ok((0..q).map(|i| self.elem_at(i)).collect())
    }

    /// Exhaustive root scan of a polynomial over this field.
    pub fn roots_univariate(&self, f: &Poly<FElem>) -> Result<Vec<FElem>> {
        assert!(!f.is_zero());
        let mut out = Vec::new();
        for x in self.all_elements()? {
            if self.is_zero(&f.eval(self, &x)) {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Roots of `b⁴ - b³ + 1` in this field, in index order.
    pub fn b_roots(&self) -> Result<Vec<FElem>> {
        let f = Poly::from_i64(self, &[1, 0, 0, -1, 1]);
        self.roots_univariate(&f)
    }

    /// Frobenius `x ↦ x^{q₀}`.
    pub fn frobenius(&self, x: &FElem, q0: u128) -> FElem {
        let mut base = *x;
        let mut acc = self.one();
        let mut n = q0;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Quadratic character for odd q: `x^{(q-1)/2} = 1`. Zero is not a
    /// square here (callers treat it separately).
    pub fn is_nonzero_square(&self, x: &FElem) -> bool {
        assert!(self.p != 2, "every element is a square in characteristic 2");
        if self.is_zero(x) {
            return false;
        }
        let exp = (self.q() - 1) / 2;
        self.frobenius(x, exp) == self.one()
    }

    /// Smallest-index element of multiplicative order exactly `n`, if any.
    pub fn root_of_unity(&self, n: u64) -> Option<FElem> {
        if (self.q() - 1) % n as u128 != 0 {
            return None;
        }
        for idx in 1..self.q() {
            let x = self.elem_at(idx);
            if self.frobenius(&x, n as u128) != self.one() {
                continue;
            }
            let mut order_n = true;
            for d in 1..n {
                if n % d == 0 && self.frobenius(&x, d as u128) == self.one() {
                    order_n = false;
                    break;
                }
            }
            if order_n {
                return Some(x);
            }
        }
        None
    }

    /// Smallest-index primitive cube root of unity (needs `3 | q - 1`).
    pub fn primitive_cube_root(&self) -> Result<FElem> {
        self.root_of_unity(3).ok_or(Error::NoRootOfB)
    }

    fn reduce_once(&self, c: &mut [u128; 7]) {
        // Fold degrees e..6 down using x^e = -modulus.
        let e = self.e as usize;
        let p = self.p as u128;
        for i in (e..7).rev() {
            let hi = c[i] % p;
            if hi == 0 {
                c[i] = 0;
                continue;
            }
            c[i] = 0;
            for j in 0..e {
                let m = self.modulus[j] as u128;
                if m != 0 {
                    // subtract hi·m at position i-e+j, staying nonnegative
                    let sub = hi * m % p;
                    c[i - e + j] = (c[i - e + j] % p + p - sub) % p;
                }
            }
        }
        for x in c.iter_mut().take(e) {
            *x %= p;
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    true
}

impl Field for FinField {
    type Elem = FElem;

    fn zero(&self) -> FElem {
        FElem([0; 4])
    }

    fn cmp_elems(&self, a: &FElem, b: &FElem) -> std::cmp::Ordering {
        self.index_of(a).cmp(&self.index_of(b))
    }

    fn render(&self, a: &FElem) -> String {
        if self.e == 1 {
            return a.0[0].to_string();
        }
        let mut parts = Vec::new();
        for k in (0..self.e as usize).rev() {
            let c = a.0[k];
            if c == 0 {
                continue;
            }
            parts.push(match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}g"),
                (k, 1) => format!("g^{k}"),
                (k, c) => format!("{c}g^{k}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    fn one(&self) -> FElem {
        FElem::scalar(1 % self.p)
    }

    fn add(&self, a: &FElem, b: &FElem) -> FElem {
        let mut out = [0u64; 4];
        for i in 0..self.e as usize {
            let s = a.0[i] + b.0[i];
            out[i] = if s >= self.p { s - self.p } else { s };
        }
        FElem(out)
    }

    fn sub(&self, a: &FElem, b: &FElem) -> FElem {
        let mut out = [0u64; 4];
        for i in 0..self.e as usize {
            out[i] = if a.0[i] >= b.0[i] {
                a.0[i] - b.0[i]
            } else {
                a.0[i] + self.p - b.0[i]
            };
        }
        FElem(out)
    }

    fn neg(&self, a: &FElem) -> FElem {
        self.sub(&self.zero(), a)
    }

    fn mul(&self, a: &FElem, b: &FElem) -> FElem {
        let e = self.e as usize;
        let mut prod = [0u128; 7];
        for i in 0..e {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] += a.0[i] as u128 * b.0[j] as u128 % self.p as u128;
            }
        }
        self.reduce_once(&mut prod);
        let mut out = [0u64; 4];
        for i in 0..e {
            out[i] = prod[i] as u64;
        }
        FElem(out)
    }

    fn inv(&self, a: &FElem) -> Result<FElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        // a^{q-2}; q is at most p⁴ so the exponent fits u128.
        Ok(self.frobenius(a, self.q() - 2))
    }

    fn from_i64(&self, n: i64) -> FElem {
        let p = self.p as i128;
        let r = ((n as i128 % p) + p) % p;
        FElem::scalar(r as u64)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn pth_root(&self, a: &FElem) -> Option<FElem> {
        // x ↦ x^p is an automorphism with inverse x ↦ x^{p^{e-1}}.
        Some(self.frobenius(a, (self.p as u128).pow(self.e - 1)))
    }

    fn is_square(&self, a: &FElem) -> Option<bool> {
        if self.p == 2 || self.is_zero(a) {
            return Some(true);
        }
        Some(self.is_nonzero_square(a))
    }

    fn roots(&self, f: &Poly<FElem>) -> Option<Vec<FElem>> {
        self.roots_univariate(f).ok()
    }
}
