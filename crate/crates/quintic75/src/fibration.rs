//! The elliptic fibration on the K3 quotient `X_λ`.
//!
//! `X_λ` is the minimal resolution of `S_λ/ι`, where `ι` swaps `x₀ ↔ x₁`;
//! it is a K3 surface, elliptic over the `t = x₃` line, and translation of a
//! 2-torsion section brings it into the form `u² = x(x² + A(t)x + B(t))`
//! with `deg A = 4`, `deg B = 6`. This module builds that Weierstrass data
//! exactly, classifies the Kodaira fibers (with split tests), counts points
//! of `X` over `𝔽_q` by fiber sums, and locates the primes of bad reduction
//! for `X_a` and for the quintic `S_a` itself.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::intutil::prime_divisors_bigint;
use crate::exact::numfield::a_parameter;
use crate::exact::{resultant_int, FElem, Field, FinField, NfElem, NumberField, Rationals};
use crate::lines::a_from_b;
use crate::pencil::singular_point_search_tower;
use crate::poly::{discriminant, interpolate, resultant, squarefree_decomposition, Poly};
use crate::{Error, Result};

/// Largest `q` for which the O(q²) fiber-sum point count is attempted.
pub const COUNT_LIMIT: u128 = 1 << 12;

/// Trial-division bound used when factoring resultant/discriminant norms.
const FACTOR_LIMIT: u64 = 100_000;

/// The Weierstrass data of `u² = x(x² + A(t)x + B(t))`.
#[derive(Debug, Clone)]
pub struct WeierstrassModel<T> {
    pub lambda: T,
    pub a: Poly<T>,
    pub b: Poly<T>,
    /// Quartic cofactor in `B = 16·t(t+1)(1+λ)²·q₄`.
    pub q4: Poly<T>,
}

/// Build the model over any coefficient field containing λ.
///
/// `B` carries the factor 16, so characteristic 2 (where the whole
/// discriminant collapses) and `λ = −1` (where `(1+λ)²` kills `B`) are
/// rejected up front.
pub fn weierstrass_ab<F: Field>(
    field: &F,
    lambda: &F::Elem,
) -> Result<WeierstrassModel<F::Elem>> {
    if field.characteristic() == 2 {
        return Err(Error::IdenticallySingular);
    }
    let one_plus = field.add(lambda, &field.one());
    if field.is_zero(&one_plus) {
        return Err(Error::DegeneratePencilMember);
    }
    let c = |k: i64| field.from_i64(k);
    // u + v·λ
    let lin = |u: i64, v: i64| field.add(&c(u), &field.mul(&c(v), lambda));
    let one_plus_sq = field.mul(&one_plus, &one_plus);
    let lambda_sq = field.mul(lambda, lambda);

    // A = λ²t⁴ − (2λ²+8λ+4)t³ − (11λ²+24λ+12)t² − 4(2λ+3)(1+λ)t − 4(1+λ)²
    let a = Poly::new(
        field,
        vec![
            field.mul(&c(-4), &one_plus_sq),
            field.mul(&field.mul(&c(-4), &lin(3, 2)), &one_plus),
            field.neg(&field.add(&lin(12, 24), &field.mul(&c(11), &lambda_sq))),
            field.neg(&field.add(&lin(4, 8), &field.mul(&c(2), &lambda_sq))),
            lambda_sq,
        ],
    );
    // q₄ = (2λ+1)(t⁴+t³) + (3λ+2)t² + (2λ+2)t + (1+λ)
    let q4 = Poly::new(
        field,
        vec![lin(1, 1), lin(2, 2), lin(2, 3), lin(1, 2), lin(1, 2)],
    );
    // B = 16·(t + t²)·(1+λ)²·q₄
    let scale = field.mul(&c(16), &one_plus_sq);
    let b = Poly::new(field, vec![field.zero(), scale.clone(), scale]).mul(field, &q4);
    Ok(WeierstrassModel {
        lambda: lambda.clone(),
        a,
        b,
        q4,
    })
}

/// `Δ = 16B²(A²−4B)` and `c₄ = 16(A²−3B)`.
///
/// These are the standard quantities of the long Weierstrass form with
/// `a₂ = A`, `a₄ = B` and the other coefficients zero; the identity with
/// the general `b₂, b₄, b₈` formulas is checked in the tests.
pub fn disc_c4<F: Field>(
    field: &F,
    model: &WeierstrassModel<F::Elem>,
) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
    let sixteen = field.from_i64(16);
    let a_sq = model.a.mul(field, &model.a);
    let delta = model
        .b
        .mul(field, &model.b)
        .mul(field, &a_sq.sub(field, &model.b.scale(field, &field.from_i64(4))))
        .scale(field, &sixteen);
    if delta.is_zero() {
        return Err(Error::IdenticallySingular);
    }
    let c4 = a_sq
        .sub(field, &model.b.scale(field, &field.from_i64(3)))
        .scale(field, &sixteen);
    Ok((delta, c4))
}

/// The Kodaira types that actually occur in this family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KodairaType {
    I(usize),
    II,
    III,
    IV,
}

impl KodairaType {
    /// Euler number of the fiber; equals `ord Δ` for every type listed here.
    pub fn euler(self) -> usize {
        match self {
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
        }
    }

    pub fn label(self) -> String {
        match self {
            KodairaType::I(n) => format!("I{n}"),
            KodairaType::II => "II".to_string(),
            KodairaType::III => "III".to_string(),
            KodairaType::IV => "IV".to_string(),
        }
    }
}

/// Kodaira type from the valuations of `c₄` and `Δ` at a place. Types that
/// cannot arise from this family's valuations (the starred types, I₀) are
/// reported as [`Error::UnsupportedType`], never guessed.
pub fn kodaira_from_orders(ord_c4: usize, ord_delta: usize) -> Result<KodairaType> {
    match (ord_c4, ord_delta) {
        (0, n) if n >= 1 => Ok(KodairaType::I(n)),
        (c, 2) if c >= 1 => Ok(KodairaType::II),
        (1, 3) => Ok(KodairaType::III),
        (c, 4) if c >= 2 => Ok(KodairaType::IV),
        _ => Err(Error::UnsupportedType { ord_c4, ord_delta }),
    }
}

/// One singular fiber, or one Galois orbit of singular fibers, of the
/// fibration.
#[derive(Debug, Clone)]
pub struct FiberPlace {
    /// `t = r`, `t = ∞`, or the vanishing locus of a root-free polynomial.
    pub place: String,
    /// Residue degree: the number of geometric fibers grouped here.
    pub degree: usize,
    pub kodaira: KodairaType,
    /// For multiplicative fibers at rational places over fields with a
    /// decidable square test: whether the fiber is split. `None` when not
    /// applicable or not decided.
    pub split: Option<bool>,
}

/// The singular fibers of one pencil member.
#[derive(Debug, Clone, Default)]
pub struct FiberConfig {
    pub places: Vec<FiberPlace>,
}

impl FiberConfig {
    /// Σ (degree × Euler number); 24 exactly on a K3.
    pub fn euler_sum(&self) -> usize {
        self.places.iter().map(|p| p.degree * p.kodaira.euler()).sum()
    }

    /// Geometric fiber counts per Kodaira label (degree-weighted).
    pub fn type_counts(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for p in &self.places {
            *out.entry(p.kodaira.label()).or_insert(0) += p.degree;
        }
        out
    }

    /// One-line summary such as `8 x I1 + 6 x I2 + 1 x I4`.
    pub fn summary(&self) -> String {
        self.type_counts()
            .iter()
            .map(|(label, n)| format!("{n} x {label}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Classify every singular fiber of the member at `λ` over `field`.
///
/// Finite places with roots in the field are classified individually (with
/// split tests); root-free cofactors are kept as one place each, which is
/// legitimate only for multiplicative types — a nontrivial gcd with `c₄`
/// aborts instead of guessing. The place `t = ∞` is read off the weighted
/// reversal `A* = s⁴A(1/s)`, `B* = s⁸B(1/s)`, `Δ* = s²⁴Δ(1/s)`.
pub fn classify_fibers<F: Field>(field: &F, lambda: &F::Elem) -> Result<FiberConfig> {
    let model = weierstrass_ab(field, lambda)?;
    let (delta, c4) = disc_c4(field, &model)?;
    let mut places = Vec::new();
    for (part, mult) in squarefree_decomposition(field, &delta) {
        if part.degree().map_or(true, |d| d == 0) {
            continue;
        }
        let mut rem = part.clone();
        if let Some(roots) = field.roots(&part) {
            for r in roots {
                let at_r = Poly::new(field, vec![field.neg(&r), field.one()]);
                let ord_delta = delta.ord_at(field, &at_r);
                let ord_c4 = c4.ord_at(field, &at_r);
                let kodaira = kodaira_from_orders(ord_c4, ord_delta)?;
                places.push(FiberPlace {
                    place: format!("t = {}", field.render(&r)),
                    degree: 1,
                    kodaira,
                    split: split_flag(field, &model, &r, kodaira),
                });
                rem = rem.exact_div(field, &at_r);
            }
        }
        if rem.degree().map_or(false, |d| d >= 1) {
            // No roots available here. Additive types would force a common
            // zero with c₄, so a trivial gcd certifies type I at every root
            // of the cofactor, all with ord Δ = mult.
            if rem.gcd(field, &c4).degree() != Some(0) {
                return Err(Error::UnsupportedType {
                    ord_c4: 1,
                    ord_delta: mult,
                });
            }
            places.push(FiberPlace {
                place: format!("{} = 0", rem.render(field, "t")),
                degree: rem.degree().unwrap(),
                kodaira: KodairaType::I(mult),
                split: None,
            });
        }
    }
    places.push(classify_infinity(&delta, &c4)?);
    Ok(FiberConfig { places })
}

/// Split test for a multiplicative fiber at a finite rational place `t₀`.
///
/// The cubic `x(x² + Ax + B)` has its double root at `x = 0` when
/// `B(t₀) = 0` (tangent cone `u² = A(t₀)x²`) and at `x = −A(t₀)/2`
/// otherwise (tangent cone `u² = −A(t₀)/2·(x − x₀)²`); the fiber is split
/// exactly when the tangent-cone coefficient is a square.
fn split_flag<F: Field>(
    field: &F,
    model: &WeierstrassModel<F::Elem>,
    t0: &F::Elem,
    kodaira: KodairaType,
) -> Option<bool> {
    if !matches!(kodaira, KodairaType::I(n) if n >= 1) {
        return None;
    }
    let a0 = model.a.eval(field, t0);
    if field.is_zero(&model.b.eval(field, t0)) {
        field.is_square(&a0)
    } else {
        let half = field.inv(&field.from_i64(2)).ok()?;
        field.is_square(&field.neg(&field.mul(&a0, &half)))
    }
}

/// Classification at `t = ∞` from the weighted reversal. The weighted model
/// is already minimal at `s = 0`: `ord B* = 8 − deg B = 2 < 8`.
fn classify_infinity<T: Clone + Eq>(delta: &Poly<T>, c4: &Poly<T>) -> Result<FiberPlace> {
    let ord_delta = 24 - delta.degree().unwrap();
    let ord_c4 = 8 - c4.degree().unwrap();
    let kodaira = kodaira_from_orders(ord_c4, ord_delta)?;
    // For a multiplicative fiber here the double root of
    // `x(x² + A*(0)x + B*(0))` sits at x = 0 with B*(0) = 0 and tangent
    // cone `u² = A*(0)x²`, and A*(0) = λ² is a square by inspection.
    let split = match kodaira {
        KodairaType::I(n) if n >= 1 => Some(true),
        _ => None,
    };
    Ok(FiberPlace {
        place: "t = ∞".to_string(),
        degree: 1,
        kodaira,
        split,
    })
}

/// Point count of the K3 `X` at the reduction picked by a root `b` of
/// `b⁴ − b³ + 1` in `field`.
#[derive(Debug, Clone)]
pub struct K3Count {
    pub p: u64,
    pub e: u32,
    pub q: u128,
    /// Element index of the chosen root of `b⁴ − b³ + 1`.
    pub b_index: u128,
    pub lambda: String,
    /// Σ over ℙ¹(𝔽_q) of the Weierstrass fiber counts.
    pub weierstrass_points: u128,
    /// Points gained by resolving the rational singular fibers (a multiple
    /// of q).
    pub correction: u128,
    /// `#X(𝔽_q) = weierstrass_points + correction`.
    pub count: u128,
    pub config: FiberConfig,
}

/// Count `#X(𝔽_q)` by fiber sums: `Σ_t (q + 1 + Σ_x χ(x³ + A(t)x² + B(t)x))`
/// over `t ∈ ℙ¹(𝔽_q)`, plus the resolution corrections at the rational
/// singular fibers (`I_n` split → `(n−1)q`; non-split → `q` for even `n`,
/// `0` for odd; `III` → `q`; `II`/`I₁` → `0`).
pub fn k3_point_count(field: &FinField, b: &FElem) -> Result<K3Count> {
    let q = field.q();
    if q > COUNT_LIMIT {
        return Err(Error::BudgetExceeded(q));
    }
    let lambda = a_from_b(field, b)?;
    let model = weierstrass_ab(field, &lambda)?;
    let config = classify_fibers(field, &lambda)?;

    let mut chi = vec![0i64; q as usize];
    for idx in 1..q {
        chi[idx as usize] = if field.is_nonzero_square(&field.elem_at(idx)) {
            1
        } else {
            -1
        };
    }
    // q + 1 + Σ_x χ(x(x² + αx + β)): affine points of the fiber plus its
    // point at infinity.
    let fiber_count = |alpha: &FElem, beta: &FElem| -> i128 {
        let mut sum: i128 = 0;
        for idx in 0..q {
            let x = field.elem_at(idx);
            let fx = field.mul(
                &x,
                &field.add(&field.mul(&x, &field.add(&x, alpha)), beta),
            );
            sum += chi[field.index_of(&fx) as usize] as i128;
        }
        q as i128 + 1 + sum
    };

    let mut total: i128 = 0;
    for idx in 0..q {
        let t = field.elem_at(idx);
        total += fiber_count(&model.a.eval(field, &t), &model.b.eval(field, &t));
    }
    // t = ∞ in the weighted coordinates: α = A*(0) = λ², β = B*(0) = 0.
    total += fiber_count(&field.mul(&lambda, &lambda), &field.zero());

    let mut correction: u128 = 0;
    for place in &config.places {
        if place.degree != 1 {
            continue;
        }
        correction += match (place.kodaira, place.split) {
            (KodairaType::I(0 | 1), _) => 0,
            (KodairaType::I(n), Some(true)) => (n as u128 - 1) * q,
            (KodairaType::I(n), Some(false)) => {
                if n % 2 == 0 {
                    q
                } else {
                    0
                }
            }
            (KodairaType::I(_), None) => return Err(Error::BadReduction(q)),
            (KodairaType::II, _) => 0,
            (KodairaType::III, _) => q,
            (KodairaType::IV, Some(true)) => 2 * q,
            (KodairaType::IV, Some(false)) => 0,
            (KodairaType::IV, None) => return Err(Error::BadReduction(q)),
        };
    }
    let weierstrass_points = u128::try_from(total).expect("fiber sums are nonnegative");
    Ok(K3Count {
        p: field.p(),
        e: field.e(),
        q,
        b_index: field.index_of(b),
        lambda: field.render(&lambda),
        weierstrass_points,
        correction,
        count: weierstrass_points + correction,
        config,
    })
}

/// The smallest extension `𝔽_{p^e}`, `e ≤ 4`, containing a root of
/// `b⁴ − b³ + 1`, together with all its roots there.
pub fn b_roots_minimal(p: u64) -> Result<(FinField, Vec<FElem>)> {
    for e in 1..=4 {
        let field = FinField::extension(p, e)?;
        let roots = field.b_roots()?;
        if !roots.is_empty() {
            return Ok((field, roots));
        }
    }
    Err(Error::NoRootOfB)
}

/// Verdict for one reduction in the K3 bad-prime scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeVerdict {
    /// Fiber configuration identical to the one over `ℚ(b)`.
    Unchanged,
    /// Exactly one I₁+I₂ pair merged into a III fiber; the surface stays
    /// smooth, so reduction is still good.
    MergeOnly,
    /// Anything else.
    Bad,
}

/// Fiber configuration of one reduction of `X_a`.
#[derive(Debug, Clone)]
pub struct K3PrimeReport {
    pub p: u64,
    pub e: u32,
    pub lambda: String,
    /// Degree-weighted Kodaira counts; empty when the model does not even
    /// reduce (characteristic 2, or the pole of `a` above 5).
    pub counts: BTreeMap<String, usize>,
    pub verdict: PrimeVerdict,
}

/// Outcome of the bad-prime analysis for the K3 `X_a`.
#[derive(Debug, Clone)]
pub struct BadPrimesK3 {
    /// Characteristics dividing one of the degeneration norms, plus the
    /// structural 2 and 5.
    pub candidates: Vec<u64>,
    /// Candidates whose reduction genuinely changes the configuration.
    pub bad: Vec<u64>,
    /// Candidates where only the I₁+I₂ → III merge happens.
    pub merge_only: Vec<u64>,
    /// The degeneration norms (label, value) the candidates came from.
    pub norms: Vec<(String, String)>,
    pub reports: Vec<K3PrimeReport>,
}

/// Fiber configuration of `X_a` over `ℚ(b)` itself: 8 I₂ + I₄(split) + 4 I₁.
pub fn reference_config() -> Result<FiberConfig> {
    classify_fibers(&NumberField, &a_parameter())
}

fn norm_primes(nf: &NumberField, x: &NfElem, out: &mut Vec<u64>) {
    let n = nf.norm(x);
    assert!(!num_traits::Zero::is_zero(&n), "degeneration norm vanished");
    out.extend(prime_divisors_bigint(n.numer(), FACTOR_LIMIT));
    if !n.denom().is_one() {
        out.extend(prime_divisors_bigint(n.denom(), FACTOR_LIMIT));
    }
}

/// `disc_t(A² − 4B)` as a polynomial in λ over ℚ, with the full power of
/// the minimal polynomial of `a` divided out, then evaluated at `λ = a`.
///
/// The discriminant itself vanishes at `λ = a`: the two root collisions
/// that create the 7th and 8th I₂ happen identically there. So the prime
/// content must be read off after removing that factor *in ℚ[λ]*, where the
/// discriminant is reconstructed from 61 specializations by interpolation
/// (its λ-degree is at most 60, and specialization commutes with disc
/// because the leading coefficient λ⁴ stays nonzero at the samples).
fn stripped_disc_at_a() -> Result<NfElem> {
    let rat = Rationals;
    let mut samples = Vec::with_capacity(61);
    for i in 1..=61i64 {
        let lam = rat.from_i64(i);
        let model = weierstrass_ab(&rat, &lam)?;
        let a_sq = model.a.mul(&rat, &model.a);
        let f = a_sq.sub(&rat, &model.b.scale(&rat, &rat.from_i64(4)));
        debug_assert_eq!(f.degree(), Some(8));
        samples.push((lam.clone(), discriminant(&rat, &f)));
    }
    let disc = interpolate(&rat, &samples);
    let nf = NumberField;
    let a = a_parameter();
    let min = nf.min_poly(&a);
    let mut stripped = disc;
    let mut strips = 0usize;
    loop {
        let (quot, rem) = stripped.divrem(&rat, &min);
        if !rem.is_zero() {
            break;
        }
        stripped = quot;
        strips += 1;
    }
    assert!(strips >= 1, "disc_t(A²−4B) must vanish at λ = a");
    let mut acc = nf.from_rational(&rat.zero());
    for c in stripped.coeffs().iter().rev() {
        acc = nf.add(&nf.mul(&acc, &a), &nf.from_rational(c));
    }
    Ok(acc)
}

fn verdict_against(
    reference: &BTreeMap<String, usize>,
    got: &BTreeMap<String, usize>,
) -> PrimeVerdict {
    if got == reference {
        return PrimeVerdict::Unchanged;
    }
    let mut merged = reference.clone();
    let mut take = |key: &str| match merged.get_mut(key) {
        Some(v) if *v > 0 => {
            *v -= 1;
            if *v == 0 {
                merged.remove(key);
            }
            true
        }
        _ => false,
    };
    if take("I1") && take("I2") {
        *merged.entry("III".to_string()).or_insert(0) += 1;
        if *got == merged {
            return PrimeVerdict::MergeOnly;
        }
    }
    PrimeVerdict::Bad
}

/// Find the primes of bad reduction of `X_a`.
///
/// Candidates are 2 and 5 (the model needs 16 invertible; `a` has its pole
/// above 5) plus every prime dividing the norm of one of the three
/// degeneration quantities: `Res_t(B, A²−4B)` (a `B`-zero collides with an
/// `A²−4B`-zero), `disc_t(q₄)` (two `B`-zeros collide), and the stripped
/// `disc_t(A²−4B)` (two `A²−4B`-zeros collide beyond the two collisions
/// defining `X_a`). Each candidate is then classified by reducing the
/// fibration at every root of `b⁴ − b³ + 1` in the smallest extension that
/// has one: an unchanged configuration clears the prime, the pure
/// I₁+I₂ → III merge is recorded as `merge_only` (still good reduction),
/// anything else lands in `bad`.
pub fn bad_primes_k3() -> Result<BadPrimesK3> {
    let nf = NumberField;
    let a = a_parameter();
    let model = weierstrass_ab(&nf, &a)?;
    let a_sq = model.a.mul(&nf, &model.a);
    let a2_minus_4b = a_sq.sub(&nf, &model.b.scale(&nf, &nf.from_i64(4)));

    let res_b = resultant(&nf, &model.b, &a2_minus_4b);
    let disc_q4 = discriminant(&nf, &model.q4);
    let stripped = stripped_disc_at_a()?;

    let mut candidates = vec![2u64, 5];
    norm_primes(&nf, &res_b, &mut candidates);
    norm_primes(&nf, &disc_q4, &mut candidates);
    norm_primes(&nf, &stripped, &mut candidates);
    candidates.sort_unstable();
    candidates.dedup();

    let norms = vec![
        ("Res_t(B, A²−4B)".to_string(), nf.norm(&res_b).to_string()),
        ("disc_t(q₄)".to_string(), nf.norm(&disc_q4).to_string()),
        (
            "disc_t(A²−4B) / minpoly(a)^4".to_string(),
            nf.norm(&stripped).to_string(),
        ),
    ];

    let reference = reference_config()?.type_counts();
    let mut reports = Vec::new();
    let mut bad = Vec::new();
    let mut merge_only = Vec::new();
    for &p in &candidates {
        let (field, roots) = b_roots_minimal(p)?;
        let mut worst = PrimeVerdict::Unchanged;
        for b in &roots {
            let report = match a_from_b(&field, b) {
                Err(_) => K3PrimeReport {
                    p,
                    e: field.e(),
                    lambda: format!("pole (b = {})", field.render(b)),
                    counts: BTreeMap::new(),
                    verdict: PrimeVerdict::Bad,
                },
                Ok(lam) => match classify_fibers(&field, &lam) {
                    Err(_) => K3PrimeReport {
                        p,
                        e: field.e(),
                        lambda: field.render(&lam),
                        counts: BTreeMap::new(),
                        verdict: PrimeVerdict::Bad,
                    },
                    Ok(cfg) => {
                        let counts = cfg.type_counts();
                        let verdict = verdict_against(&reference, &counts);
                        K3PrimeReport {
                            p,
                            e: field.e(),
                            lambda: field.render(&lam),
                            counts,
                            verdict,
                        }
                    }
                },
            };
            worst = match (worst, report.verdict) {
                (PrimeVerdict::Bad, _) | (_, PrimeVerdict::Bad) => PrimeVerdict::Bad,
                (PrimeVerdict::MergeOnly, _) | (_, PrimeVerdict::MergeOnly) => {
                    PrimeVerdict::MergeOnly
                }
                _ => PrimeVerdict::Unchanged,
            };
            reports.push(report);
        }
        match worst {
            PrimeVerdict::Bad => bad.push(p),
            PrimeVerdict::MergeOnly => merge_only.push(p),
            PrimeVerdict::Unchanged => {}
        }
    }
    Ok(BadPrimesK3 {
        candidates,
        bad,
        merge_only,
        norms,
        reports,
    })
}

/// Outcome of the bad-prime analysis for the quintic `S_a`.
#[derive(Debug, Clone)]
pub struct QuinticBadPrimes {
    /// Per printed singular parameter λ₀: `Res_b(b⁴−b³+1, numerator(a−λ₀))`
    /// (for λ₀ = ∞ the resultant against `b + 2`, the pole of `a`).
    pub resultants: Vec<(String, BigInt)>,
    pub bad: Vec<u64>,
    /// Characteristic 2: `a ≡ 0` there and the member `S₀` shows no
    /// singular point over 𝔽₂, …, 𝔽₁₆.
    pub two_is_good: bool,
}

/// Find the characteristics where `S_a` degenerates: those where `a`
/// reduces onto one of the six singular parameters of the pencil. With
/// `λ₀ = r/s`, the difference `a − λ₀ = ((−2s−2r) − r·b)/(s(b+2))` can
/// vanish mod p exactly when p divides the resultant of the numerator with
/// `b⁴ − b³ + 1`. Characteristic 2 needs a separate look because `a ≡ 0`
/// at every prime above 2 and `S₀` is a smooth member there.
pub fn bad_primes_quintic(budget: u128) -> Result<QuinticBadPrimes> {
    let b_min: Vec<BigInt> = [1i64, 0, 0, -1, 1].iter().map(|&c| BigInt::from(c)).collect();
    let singular: [(i64, i64, &str); 5] = [
        (-13, 25, "-13/25"),
        (-1, 2, "-1/2"),
        (-3, 2, "-3/2"),
        (-51, 50, "-51/50"),
        (-1, 1, "-1"),
    ];
    let mut resultants = Vec::new();
    let mut bad: Vec<u64> = Vec::new();
    for (r, s, label) in singular {
        let numerator = vec![BigInt::from(-2 * s - 2 * r), BigInt::from(-r)];
        let res = resultant_int(&b_min, &numerator)?;
        bad.extend(prime_divisors_bigint(&res, FACTOR_LIMIT));
        resultants.push((label.to_string(), res));
    }
    let res_inf = resultant_int(&b_min, &[BigInt::from(2), BigInt::one()])?;
    bad.extend(prime_divisors_bigint(&res_inf, FACTOR_LIMIT));
    resultants.push(("∞".to_string(), res_inf));
    bad.sort_unstable();
    bad.dedup();

    let search = singular_point_search_tower(2, Some(0), 4, budget)?;
    let two_is_good = search.found_at.is_none();
    Ok(QuinticBadPrimes {
        resultants,
        bad,
        two_is_good,
    })
}
