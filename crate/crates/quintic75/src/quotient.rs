//! The order-5 rotation `R: x_i ↦ x_{i+1}` acts freely on every smooth
//! pencil member; the quotient of `S_a` is a Godeaux surface `Q` and the
//! pushed-forward line classes span a sublattice whose Gram matrix `N`
//! has rank 8 — one short of `ρ(Q) = 9`, which is what forces a 41st
//! class upstairs. This module computes the quotient pairing, the matrix
//! `N`, the characteristic-2 class `D₂` with the lattices `N′`, `M′` and
//! `M₂`, and the fixed-point check that shows the action is free.

use crate::exact::finite::FinField;
use crate::exact::Field;
use crate::lines::{act_line, char2_lines, gram, pair, Line};
use crate::pencil::{elementary_symmetric, power_sum};
use crate::zlinalg::{GramLattice, ZMat};
use crate::{Error, Result};
use num_bigint::BigInt;

/// The 5-cycle: `act_line` with this permutation sends `x_i` to `x_{i+1}`.
pub const R_ROTATION: [usize; 5] = [4, 0, 1, 2, 3];

/// Apply `R` to a line.
pub fn rotate_line<F: Field>(field: &F, line: &Line<F::Elem>) -> Line<F::Elem> {
    act_line(field, &R_ROTATION, line)
}

/// Decompose a line list into R-orbits (lists of indices, each sorted;
/// orbits ordered by smallest member). `InconsistentSpan` if the list is
/// not R-stable.
pub fn r_orbits<F: Field>(
    field: &F,
    lines: &[Line<F::Elem>],
) -> Result<Vec<Vec<usize>>> {
    let mut seen = vec![false; lines.len()];
    let mut orbits = Vec::new();
    for start in 0..lines.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut cur = rotate_line(field, &lines[start]);
        while cur != lines[start] {
            let i = lines
                .iter()
                .position(|l| *l == cur)
                .ok_or(Error::InconsistentSpan)?;
            if !seen[i] {
                orbit.push(i);
                seen[i] = true;
            }
            cur = rotate_line(field, &cur);
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Pairing of the images of two lines on the quotient:
/// `π(L)·π(L′) = L·(Σᵢ Rⁱ L′)`.
pub fn quotient_pairing<F: Field>(
    field: &F,
    l1: &Line<F::Elem>,
    l2: &Line<F::Elem>,
) -> i64 {
    let mut s = 0;
    let mut cur = l2.clone();
    for _ in 0..5 {
        s += pair(field, l1, &cur);
        cur = rotate_line(field, &cur);
    }
    s
}

/// Rank and discriminant of a lattice presented by a (possibly
/// degenerate) Gram matrix of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub name: String,
    pub rank: usize,
    pub disc: BigInt,
}

fn report(name: &str, g: ZMat) -> LatticeReport {
    let lat = GramLattice::new(g);
    let img = lat.image_lattice();
    LatticeReport {
        name: name.to_string(),
        rank: img.rank,
        disc: img.disc,
    }
}

/// Gram matrix `N` of the 15 orbit images of the 75 lines (representative
/// = smallest index per orbit), together with the orbits themselves.
/// The 75 lines must split into 15 free orbits.
pub fn godeaux_gram<F: Field>(
    field: &F,
    lines: &[Line<F::Elem>],
) -> Result<(ZMat, Vec<Vec<usize>>)> {
    let orbits = r_orbits(field, lines)?;
    if lines.len() != 75 || orbits.len() != 15 || orbits.iter().any(|o| o.len() != 5) {
        return Err(Error::InconsistentSpan);
    }
    let reps: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
    let mut n = ZMat::zero(15, 15);
    for (i, &ri) in reps.iter().enumerate() {
        for (j, &rj) in reps.iter().enumerate() {
            let v = quotient_pairing(field, &lines[ri], &lines[rj]);
            n.set(i, j, BigInt::from(v));
        }
    }
    Ok((n, orbits))
}

/// Rank/disc of the Godeaux image lattice `N` (expected: rank 8, disc −2).
pub fn godeaux_lattice<F: Field>(
    field: &F,
    lines: &[Line<F::Elem>],
) -> Result<LatticeReport> {
    let (n, _) = godeaux_gram(field, lines)?;
    Ok(report("N", n))
}

/// Gram matrix of formal sums of lines: entry `(i,j)` is the full pairing
/// of `Σ_{a ∈ gens[i]} L_a` with `Σ_{b ∈ gens[j]} L_b`.
fn gen_gram(g: &ZMat, gens: &[Vec<usize>]) -> ZMat {
    let n = gens.len();
    let mut out = ZMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = BigInt::from(0);
            for &a in &gens[i] {
                for &b in &gens[j] {
                    s += g.at(a, b);
                }
            }
            out.set(i, j, s);
        }
    }
    out
}

/// The characteristic-2 lattice package.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D2Report {
    /// Indices (into the 135-line list) of the R-orbit of ℓ₂, whose sum is D₂.
    pub d2_line_indices: Vec<usize>,
    /// Indices of the 12 extra lines adjoined to reach rank 53.
    pub extra_for_m2: Vec<usize>,
    /// Gram of the 15 line-orbit images and π(ℓ₂) on the quotient.
    pub n_prime: LatticeReport,
    /// 75 lines + the class D₂.
    pub m_prime: LatticeReport,
    /// M′ plus the 12 extra lines.
    pub m2: LatticeReport,
}

/// Build `D₂ = Σᵢ Rⁱℓ₂` over 𝔽₁₆ and the lattices `N′`, `M′`, `M₂`.
///
/// The 12 supplementary lines for `M₂` are chosen greedily: walk the extra
/// lines in canonical order and keep each one that grows the rank, until
/// rank 53. `RankDeficientExtension` if the walk ends below rank 53.
pub fn d2_lattices(f16: &FinField) -> Result<D2Report> {
    let pack = char2_lines(f16)?;
    let lines = &pack.lines;
    let g = gram(f16, lines);

    // the R-orbit of ℓ₂
    let mut d2 = Vec::new();
    let mut cur = lines[pack.l2_index].clone();
    for _ in 0..5 {
        let i = lines
            .iter()
            .position(|l| *l == cur)
            .ok_or(Error::InconsistentSpan)?;
        d2.push(i);
        cur = rotate_line(f16, &cur);
    }
    d2.sort_unstable();
    d2.dedup();
    if d2.len() != 5 {
        return Err(Error::InconsistentSpan);
    }

    // M′: the 75 characteristic-2 reductions of the lines plus D₂
    let mut gens: Vec<Vec<usize>> = (0..75).map(|i| vec![i]).collect();
    gens.push(d2.clone());
    let m_prime_gram = gen_gram(&g, &gens);
    let m_prime = report("M'", m_prime_gram);

    // M₂: extend greedily with extra lines until the rank reaches 53
    let mut chosen = Vec::new();
    let mut rank_cur = m_prime.rank;
    for cand in 75..lines.len() {
        if rank_cur == 53 {
            break;
        }
        let mut trial = gens.clone();
        trial.push(vec![cand]);
        let r = GramLattice::new(gen_gram(&g, &trial)).rank();
        if r > rank_cur {
            gens = trial;
            rank_cur = r;
            chosen.push(cand);
        }
    }
    if rank_cur != 53 {
        return Err(Error::RankDeficientExtension);
    }
    let m2 = report("M2", gen_gram(&g, &gens));

    // N′ on the quotient: the 15 line-orbit images plus π(ℓ₂)
    let orbits75 = r_orbits(f16, &lines[..75])?;
    if orbits75.len() != 15 {
        return Err(Error::InconsistentSpan);
    }
    let mut reps: Vec<usize> = orbits75.iter().map(|o| o[0]).collect();
    reps.push(pack.l2_index);
    let mut np = ZMat::zero(16, 16);
    for (i, &ri) in reps.iter().enumerate() {
        for (j, &rj) in reps.iter().enumerate() {
            let v = quotient_pairing(f16, &lines[ri], &lines[rj]);
            np.set(i, j, BigInt::from(v));
        }
    }
    let n_prime = report("N'", np);

    Ok(D2Report {
        d2_line_indices: d2,
        extra_for_m2: chosen,
        n_prime,
        m_prime,
        m2,
    })
}

/// Outcome of checking that no fixed point of `R` lies on any pencil
/// member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RFixedPointReport {
    pub p: u64,
    /// Degree of the extension containing a primitive 5th root of unity
    /// (1 for `p = 5`, where the only fixed point is the all-ones point).
    pub e: u32,
    /// Nontrivial fixed points examined (4 when `p ≠ 5`, 1 when `p = 5`).
    pub fixed_points: usize,
    /// `e₂`, `e₃` vanish and `e₅ = 1` at every fixed point, so every
    /// member `e₅ - (λ+1)e₂e₃` takes the value 1 there — never 0.
    pub all_off_surface: bool,
}

/// Verify that the fixed points of `R` avoid the whole pencil in
/// characteristic `p`.
///
/// For `p ≠ 5` the fixed points are `(1 : ε : ε² : ε³ : ε⁴)` for the four
/// primitive 5th roots ε in the minimal extension 𝔽_{p^e}; the check is
/// `s_l = 0` for `l = 1..4` and `s₅ = 5` there, hence `e₂ = e₃ = 0`,
/// `e₅ = 1`. For `p = 5` the unique fixed point is `(1:1:1:1:1)`, where
/// every member evaluates to 1.
pub fn r_fixed_point_check(p: u64) -> Result<RFixedPointReport> {
    if p == 5 {
        let f5 = FinField::prime(5)?;
        let pt = [f5.one(), f5.one(), f5.one(), f5.one()];
        let e2 = elementary_symmetric(&f5, 2).eval(&f5, &pt);
        let e3 = elementary_symmetric(&f5, 3).eval(&f5, &pt);
        let e5 = elementary_symmetric(&f5, 5).eval(&f5, &pt);
        let ok = f5.is_zero(&e2) && f5.is_zero(&e3) && e5 == f5.one();
        return Ok(RFixedPointReport {
            p,
            e: 1,
            fixed_points: 1,
            all_off_surface: ok,
        });
    }
    // minimal e with 5 | p^e - 1; divides 4 since (ℤ/5)^× has order 4
    let e = (1..=4)
        .find(|&e| {
            let mut q: u128 = 1;
            for _ in 0..e {
                q *= p as u128;
            }
            q % 5 == 1
        })
        .ok_or(Error::BadPrime(p))?;
    let field = FinField::extension(p, e)?;
    let eps = field.root_of_unity(5).ok_or(Error::BadPrime(p))?;
    let mut ok = true;
    for k in 1..5u64 {
        let z = field.pow(&eps, k);
        // (1 : z : z² : z³ : z⁴), fifth coordinate folded into the model
        let pt = [field.one(), z, field.pow(&z, 2), field.pow(&z, 3)];
        for l in 1..=4usize {
            ok &= field.is_zero(&power_sum(&field, l).eval(&field, &pt));
        }
        ok &= power_sum(&field, 5).eval(&field, &pt) == field.from_i64(5);
        ok &= field.is_zero(&elementary_symmetric(&field, 2).eval(&field, &pt));
        ok &= field.is_zero(&elementary_symmetric(&field, 3).eval(&field, &pt));
        ok &= elementary_symmetric(&field, 5).eval(&field, &pt) == field.one();
    }
    Ok(RFixedPointReport {
        p,
        e,
        fixed_points: 4,
        all_off_surface: ok,
    })
}
