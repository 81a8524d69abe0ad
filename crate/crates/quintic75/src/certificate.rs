//! End-to-end certificate assembly. Each block recomputes its claim from
//! scratch and checks it against the expected value; the conclusion
//! `ρ(S/ℂ) = 41` is emitted only when every block verifies, and any
//! mismatch aborts with [`Error::BlockFailed`] naming the block.
//!
//! The blocks, in dependency order:
//!
//! * `constants` — the trust boundary: the few Hodge-theoretic inputs that
//!   are not recomputed (see [`crate::constants`]).
//! * `lower_bound` — the 75-line Gram matrix over ℚ(b) has rank 40, and
//!   the Godeaux image lattice N has rank 8 < 9 = ρ(Q), so one quotient
//!   class is missed by the lines and ρ(S) ≥ 41.
//! * `upper_bound` — point counts of S and X at two good primes, the
//!   trace-candidate tables with their square classes, and the
//!   disjointness verdict: ρ(X/ℂ) = 19, so rank T(S) = 12 and ρ(S) ≤ 41.
//! * `bad_primes` — the reduction analysis for X and S.
//! * `ns_index` — disc(M′) and disc(M₂) bound the index [NS : M′] to 2^i,
//!   i ≤ 4.
//!
//! Certificates are deterministic: two runs produce byte-identical JSON
//! except for the timestamp field.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::constants::{
    computed, constant, Claim, GODEAUX_EULER, GODEAUX_RHO, K3_B2, K3_BAD_PRIMES,
    K3_MERGE_ONLY_PRIMES, QUINTIC_B2, QUINTIC_BAD_PRIMES, QUINTIC_PG, QUINTIC_RANK_T,
    S0_BAD_CHARACTERISTICS, TRANSCENDENTAL_COPIES,
};
use crate::counting::{
    k3_trace_candidates, lefschetz_cross_check, line_span_trace, quintic_rho_reduction, s_count,
    tate_condition, van_luijk_verdict, x_count, CountCache, CountRecord,
};
use crate::exact::{factor_u64, FinField, NumberField};
use crate::fibration::{bad_primes_k3, bad_primes_quintic, classify_fibers, reference_config, FiberConfig};
use crate::lines::{a_from_b, frobenius_permutation, gram, lines75, lines75_nf};
use crate::quotient::{d2_lattices, godeaux_lattice, r_fixed_point_check};
use crate::zlinalg::rank_exact;
use crate::{Error, Result};

fn fail(block: &str, msg: impl Into<String>) -> Error {
    Error::BlockFailed(block.to_string(), msg.into())
}

fn in_block<T>(block: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| fail(block, e.to_string()))
}

/// Options for [`run_certificate`].
#[derive(Debug, Clone)]
pub struct CertifyOptions {
    /// Exactly two distinct primes of good reduction; counts run over 𝔽_p.
    pub primes: Vec<u64>,
    pub cache: CountCache,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            primes: vec![19, 23],
            cache: CountCache::disabled(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantsBlock {
    pub b2_quintic: Claim<u32>,
    pub pg_quintic: Claim<u32>,
    pub b2_k3: Claim<u32>,
    pub rho_godeaux: Claim<u32>,
    pub euler_godeaux: Claim<u32>,
    pub rank_t_alternatives: Claim<[u32; 2]>,
    pub transcendental_copies: Claim<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LowerBoundBlock {
    /// Rank of the 75×75 line Gram matrix over ℚ(b).
    pub line_gram_rank: Claim<u32>,
    pub godeaux_image_rank: Claim<u32>,
    pub godeaux_image_disc: Claim<String>,
    /// No fixed point of the coordinate rotation lies on any pencil member
    /// (checked in characteristics 5, 11 and 19), so the quotient is smooth.
    pub rotation_acts_freely: Claim<bool>,
    pub rho_lower: Claim<u32>,
    pub argument: Vec<String>,
}

/// One fiber of the elliptic fibration, as serialized in certificates.
#[derive(Debug, Clone, Serialize)]
pub struct FiberOut {
    pub place: String,
    pub degree: usize,
    #[serde(rename = "type")]
    pub kodaira: String,
    pub split: Option<bool>,
    pub euler: usize,
}

fn fibers_out(config: &FiberConfig) -> Vec<FiberOut> {
    config
        .places
        .iter()
        .map(|p| FiberOut {
            place: p.place.clone(),
            degree: p.degree,
            kodaira: p.kodaira.label(),
            split: p.split,
            euler: p.kodaira.euler(),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CandidateOut {
    pub a_q: i64,
    /// Square class `−cl(4q² − a_q²)`, factored display; `null` only at the
    /// Weil boundary.
    pub d: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LefschetzOut {
    /// Frobenius trace on the span of the 75 lines (40 when all lines are
    /// rational over 𝔽_p).
    pub span_trace: i64,
    pub a_q: i64,
    pub eps1: i64,
    pub eps2: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimeEvidence {
    pub p: u64,
    /// One record per root of `b⁴ − b³ + 1` in 𝔽_p; all roots must agree
    /// on the count.
    pub s_counts: Vec<CountRecord>,
    pub x_counts: Vec<CountRecord>,
    /// `#X ≢ 1 (mod p)`: the reduction is not supersingular, so its ρ is
    /// at most 20 and the trace is pinned mod p.
    pub tate_condition: bool,
    pub fiber_config: Vec<FiberOut>,
    pub candidates: Vec<CandidateOut>,
    pub rho_reduction: Claim<u32>,
    pub lefschetz: LefschetzOut,
}

#[derive(Debug, Clone, Serialize)]
pub struct UpperBoundBlock {
    /// Fibration of X over ℚ(b): 8 I₂ + split I₄ at ∞ + 4 I₁, Euler sum 24.
    pub reference_fibers: Vec<FiberOut>,
    pub reference_type_counts: BTreeMap<String, usize>,
    pub primes: Vec<PrimeEvidence>,
    pub disjoint: bool,
    pub overlapping_classes: Vec<String>,
    pub rho_k3: Claim<u32>,
    pub rank_t_quintic: Claim<u32>,
    pub rho_upper: Claim<u32>,
    pub argument: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BadPrimesBlock {
    pub k3_candidates: Vec<u64>,
    pub k3_norms: Vec<(String, String)>,
    pub k3_bad: Claim<Vec<u64>>,
    pub k3_merge_only: Claim<Vec<u64>>,
    pub quintic_resultants: Vec<(String, String)>,
    pub quintic_bad: Claim<Vec<u64>>,
    pub quintic_good_at_2: Claim<bool>,
    pub s0_bad_characteristics: Claim<[u64; 3]>,
    pub argument: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeOut {
    pub rank: Claim<u32>,
    pub disc: Claim<String>,
    pub disc_factored: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct NsIndexBlock {
    pub n_prime: LatticeOut,
    pub m_prime: LatticeOut,
    pub m2: LatticeOut,
    /// Indices (into the 135 characteristic-2 lines) of the R-orbit summed
    /// into D₂, and of the 12 lines adjoined to reach rank 53.
    pub d2_line_indices: Vec<usize>,
    pub extra_lines_for_m2: Vec<usize>,
    /// `[NS : M′]` divides this (from disc(M′) alone).
    pub index_divides: String,
    /// Primes ruled out because disc(M₂) is a unit there.
    pub excluded_primes: Vec<u64>,
    pub index_bound_exponent: Claim<u32>,
    pub argument: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Conclusion {
    pub rho_quintic_complex: Claim<u32>,
    pub ns_index_form: String,
    pub all_blocks_verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub tool_version: String,
    /// The only nondeterministic field.
    pub timestamp_unix_seconds: u64,
    pub constants: ConstantsBlock,
    pub lower_bound: LowerBoundBlock,
    pub upper_bound: UpperBoundBlock,
    pub bad_primes: BadPrimesBlock,
    pub ns_index: NsIndexBlock,
    pub conclusion: Conclusion,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// One-paragraph-per-block rendering for standard output.
    pub fn summary(&self) -> String {
        let mut out = Vec::new();
        out.push(format!(
            "lower bound: line span rank {} + Godeaux deficit ({} < {}) => rho >= {}",
            self.lower_bound.line_gram_rank.value,
            self.lower_bound.godeaux_image_rank.value,
            GODEAUX_RHO,
            self.lower_bound.rho_lower.value
        ));
        for ev in &self.upper_bound.primes {
            out.push(format!(
                "p = {}: #S = {}, #X = {}, candidates {}",
                ev.p,
                ev.s_counts[0].count,
                ev.x_counts[0].count,
                ev.candidates
                    .iter()
                    .map(|c| format!("{} (D = {})", c.a_q, c.d.as_deref().unwrap_or("-")))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
        out.push(format!(
            "upper bound: square-class lists disjoint => rho(X) = {} => rho <= {}",
            self.upper_bound.rho_k3.value, self.upper_bound.rho_upper.value
        ));
        out.push(format!(
            "bad primes: X {:?} (merge-only {:?}), S {:?}",
            self.bad_primes.k3_bad.value,
            self.bad_primes.k3_merge_only.value,
            self.bad_primes.quintic_bad.value
        ));
        out.push(format!(
            "NS index: [NS : M'] = {} (disc M' = {}, disc M2 = {})",
            self.conclusion.ns_index_form, self.ns_index.m_prime.disc_factored, self.ns_index.m2.disc_factored
        ));
        out.push(format!(
            "conclusion: rho = {}",
            self.conclusion.rho_quintic_complex.value
        ));
        out.join("\n")
    }
}

fn constants_block() -> ConstantsBlock {
    ConstantsBlock {
        b2_quintic: constant(QUINTIC_B2),
        pg_quintic: constant(QUINTIC_PG),
        b2_k3: constant(K3_B2),
        rho_godeaux: constant(GODEAUX_RHO),
        euler_godeaux: constant(GODEAUX_EULER),
        rank_t_alternatives: constant(QUINTIC_RANK_T),
        transcendental_copies: constant(TRANSCENDENTAL_COPIES),
    }
}

fn lower_bound_block() -> Result<LowerBoundBlock> {
    const BLOCK: &str = "lower_bound";
    let nf = NumberField;
    let lines = in_block(BLOCK, lines75_nf())?;
    let line_rank = rank_exact(&gram(&nf, &lines)) as u32;
    if line_rank != 40 {
        return Err(fail(BLOCK, format!("line Gram rank {line_rank}, expected 40")));
    }
    let n = in_block(BLOCK, godeaux_lattice(&nf, &lines))?;
    if n.rank != 8 || n.disc != (-2).into() {
        return Err(fail(
            BLOCK,
            format!("Godeaux lattice (rank, disc) = ({}, {}), expected (8, -2)", n.rank, n.disc),
        ));
    }
    let mut free = true;
    for p in [5u64, 11, 19] {
        free &= in_block(BLOCK, r_fixed_point_check(p))?.all_off_surface;
    }
    if !free {
        return Err(fail(BLOCK, "a rotation fixed point lies on the pencil"));
    }
    let deficit = GODEAUX_RHO - n.rank as u32;
    Ok(LowerBoundBlock {
        line_gram_rank: computed(line_rank),
        godeaux_image_rank: computed(n.rank as u32),
        godeaux_image_disc: computed(n.disc.to_string()),
        rotation_acts_freely: computed(true),
        rho_lower: computed(line_rank + deficit),
        argument: vec![
            format!("the 75 lines span a rank-{line_rank} sublattice of NS(S)"),
            format!(
                "the rotation acts freely, and the pushed-forward line classes span only rank {} of the quotient's rho = {}",
                n.rank, GODEAUX_RHO
            ),
            format!(
                "a class of the quotient missed by the lines pulls back to a new class: rho(S) >= {} + {} = {}",
                line_rank,
                deficit,
                line_rank + deficit
            ),
        ],
    })
}

/// Counts, candidate table, and cross-checks at one prime.
fn prime_evidence(p: u64, cache: &CountCache) -> Result<PrimeEvidence> {
    const BLOCK: &str = "upper_bound";
    if K3_BAD_PRIMES.contains(&p) {
        return Err(fail(BLOCK, format!("{p} is not a prime of good reduction")));
    }
    let field = in_block(BLOCK, FinField::prime(p))?;
    let roots = in_block(BLOCK, field.b_roots())?;
    if roots.is_empty() {
        return Err(fail(BLOCK, format!("b^4 - b^3 + 1 has no root in F_{p}")));
    }
    let mut s_counts = Vec::new();
    let mut x_counts = Vec::new();
    for root in 0..roots.len() as u32 {
        s_counts.push(in_block(BLOCK, s_count(p, 1, root, cache))?);
        x_counts.push(in_block(BLOCK, x_count(p, 1, root, cache))?);
    }
    if s_counts.iter().any(|r| r.count != s_counts[0].count)
        || x_counts.iter().any(|r| r.count != x_counts[0].count)
    {
        return Err(fail(BLOCK, format!("b-roots disagree on a count at p = {p}")));
    }
    let (s0, x0) = (s_counts[0].count, x_counts[0].count);
    let q = p as u128;
    if !tate_condition(x0, q) {
        return Err(fail(
            BLOCK,
            format!("#X(F_{p}) = {x0} = 1 (mod {p}): supersingular reduction, no verdict"),
        ));
    }

    let lambda = in_block(BLOCK, a_from_b(&field, &roots[0]))?;
    let config = in_block(BLOCK, classify_fibers(&field, &lambda))?;
    let candidates: Vec<CandidateOut> = k3_trace_candidates(x0, q)
        .iter()
        .map(|c| CandidateOut {
            a_q: c.a_q,
            d: c.d.map(|d| d.display()),
        })
        .collect();
    let rho_red = in_block(BLOCK, quintic_rho_reduction(s0, p, 1))?;
    if rho_red != 45 {
        return Err(fail(BLOCK, format!("rho of the reduction at {p} is {rho_red}, expected 45")));
    }

    let lines = in_block(BLOCK, lines75(&field, &roots[0]))?;
    let perm = in_block(BLOCK, frobenius_permutation(&field, &lines, q))?;
    let trace_big = in_block(BLOCK, line_span_trace(&gram(&field, &lines), &perm))?;
    let span_trace = i64::try_from(&trace_big)
        .map_err(|_| fail(BLOCK, "span trace out of range"))?;
    let matched = lefschetz_cross_check(s0, x0, q, span_trace).ok_or_else(|| {
        fail(
            BLOCK,
            format!("no sign assignment reconciles #S = {s0} with #X = {x0} at p = {p}"),
        )
    })?;

    Ok(PrimeEvidence {
        p,
        s_counts,
        x_counts,
        tate_condition: true,
        fiber_config: fibers_out(&config),
        candidates,
        rho_reduction: computed(rho_red),
        lefschetz: LefschetzOut {
            span_trace,
            a_q: matched.a_q,
            eps1: matched.eps1,
            eps2: matched.eps2,
        },
    })
}

/// Expected counts at the default primes; any other good prime is accepted
/// on the strength of the internal cross-checks alone.
const EXPECTED_COUNTS: [(u64, u64, u64); 2] = [(19, 915, 676), (23, 1255, 924)];

fn upper_bound_block(primes: &[u64], cache: &CountCache) -> Result<UpperBoundBlock> {
    const BLOCK: &str = "upper_bound";
    if primes.len() != 2 || primes[0] == primes[1] {
        return Err(fail(
            BLOCK,
            "the square-class comparison needs exactly two distinct primes",
        ));
    }
    let reference = in_block(BLOCK, reference_config())?;
    let ref_counts = reference.type_counts();
    let expected_ref: BTreeMap<String, usize> =
        [("I1".to_string(), 4), ("I2".to_string(), 8), ("I4".to_string(), 1)]
            .into_iter()
            .collect();
    if ref_counts != expected_ref || reference.euler_sum() != 24 {
        return Err(fail(BLOCK, format!("fibration over Q(b) degenerated: {ref_counts:?}")));
    }

    let mut evidence = Vec::new();
    for &p in primes {
        let ev = prime_evidence(p, cache)?;
        for (pe, se, xe) in EXPECTED_COUNTS {
            if p == pe && (ev.s_counts[0].count != se || ev.x_counts[0].count != xe) {
                return Err(fail(
                    BLOCK,
                    format!(
                        "counts at {p} are (#S, #X) = ({}, {}), expected ({se}, {xe})",
                        ev.s_counts[0].count, ev.x_counts[0].count
                    ),
                ));
            }
        }
        evidence.push(ev);
    }

    let cands: Vec<_> = evidence
        .iter()
        .map(|ev| k3_trace_candidates(ev.x_counts[0].count, ev.p as u128))
        .collect();
    let verdict = van_luijk_verdict(&cands[0], &cands[1]);
    if !verdict.disjoint {
        return Err(fail(
            BLOCK,
            format!(
                "square classes {:?} occur at both primes: no verdict",
                verdict.overlaps.iter().map(|d| d.display()).collect::<Vec<_>>()
            ),
        ));
    }
    let rho_k3 = verdict.rho_x.expect("disjoint verdict carries rho");
    let rank_t = TRANSCENDENTAL_COPIES * (K3_B2 - rho_k3);
    if !QUINTIC_RANK_T.contains(&rank_t) {
        return Err(fail(BLOCK, format!("rank T(S) = {rank_t} is not an admissible value")));
    }
    let rho_upper = QUINTIC_B2 - rank_t;
    Ok(UpperBoundBlock {
        reference_fibers: fibers_out(&reference),
        reference_type_counts: ref_counts,
        primes: evidence,
        disjoint: true,
        overlapping_classes: Vec::new(),
        rho_k3: computed(rho_k3),
        rank_t_quintic: computed(rank_t),
        rho_upper: computed(rho_upper),
        argument: vec![
            format!(
                "at each prime #X != 1 (mod p), so the reduction has rho <= 20 and a jump to 20 would force disc NS into the candidate square classes"
            ),
            format!("the candidate class lists at {} and {} share no class, so rho(X/C) < 20; the fibration already gives 19", primes[0], primes[1]),
            format!(
                "rank T(X) = {} - {} = {}, so rank T(S) = {}*{} = {} and rho(S/C) <= {} - {} = {}",
                K3_B2,
                rho_k3,
                K3_B2 - rho_k3,
                TRANSCENDENTAL_COPIES,
                K3_B2 - rho_k3,
                rank_t,
                QUINTIC_B2,
                rank_t,
                rho_upper
            ),
        ],
    })
}

fn bad_primes_block() -> Result<BadPrimesBlock> {
    const BLOCK: &str = "bad_primes";
    let k3 = in_block(BLOCK, bad_primes_k3())?;
    if k3.bad != K3_BAD_PRIMES || k3.merge_only != K3_MERGE_ONLY_PRIMES {
        return Err(fail(
            BLOCK,
            format!("K3 bad primes {:?} / merge-only {:?} off the expected sets", k3.bad, k3.merge_only),
        ));
    }
    let quintic = in_block(BLOCK, bad_primes_quintic(1 << 16))?;
    if quintic.bad != QUINTIC_BAD_PRIMES {
        return Err(fail(BLOCK, format!("quintic bad primes {:?} off the expected set", quintic.bad)));
    }
    if !quintic.two_is_good {
        return Err(fail(BLOCK, "a singular point appeared in characteristic 2"));
    }
    Ok(BadPrimesBlock {
        k3_candidates: k3.candidates.clone(),
        k3_norms: k3.norms.clone(),
        k3_bad: computed(k3.bad.clone()),
        k3_merge_only: computed(k3.merge_only.clone()),
        quintic_resultants: quintic
            .resultants
            .iter()
            .map(|(l, r)| (l.clone(), r.to_string()))
            .collect(),
        quintic_bad: computed(quintic.bad.clone()),
        quintic_good_at_2: computed(true),
        s0_bad_characteristics: constant(S0_BAD_CHARACTERISTICS),
        argument: vec![
            "every candidate characteristic divides one of the degeneration norms of the fibration".into(),
            format!("at {:?} only an I1+I2 pair merges to III: the surface stays smooth", k3.merge_only),
            "the quintic's singular parameters hit a only at primes dividing the printed resultants".into(),
            "in characteristic 2 the parameter vanishes and the lambda = 0 member is verified smooth point by point".into(),
        ],
    })
}

fn factored(n: u64) -> String {
    factor_u64(n)
        .into_iter()
        .map(|(p, v)| if v == 1 { p.to_string() } else { format!("{p}^{v}") })
        .collect::<Vec<_>>()
        .join(" · ")
}

fn ns_index_block() -> Result<NsIndexBlock> {
    const BLOCK: &str = "ns_index";
    let f16 = in_block(BLOCK, FinField::extension(2, 4))?;
    let rep = in_block(BLOCK, d2_lattices(&f16))?;
    let expect = |name: &str, rank: usize, disc: i64, got_rank: usize, got_disc: &num_bigint::BigInt| -> Result<()> {
        if got_rank != rank || *got_disc != disc.into() {
            return Err(fail(
                BLOCK,
                format!("{name}: (rank, disc) = ({got_rank}, {got_disc}), expected ({rank}, {disc})"),
            ));
        }
        Ok(())
    };
    expect("N'", 9, 1, rep.n_prime.rank, &rep.n_prime.disc)?;
    let m_prime_disc: u64 = 1517978880; // 2^8 · 3^4 · 5 · 11^4
    let m2_disc: u64 = 1638400; // 2^16 · 5^2
    expect("M'", 41, m_prime_disc as i64, rep.m_prime.rank, &rep.m_prime.disc)?;
    expect("M2", 53, m2_disc as i64, rep.m2.rank, &rep.m2.disc)?;

    // index² · |disc NS| = disc(M′), so the index divides ∏ p^⌊v_p/2⌋
    let m_factors = factor_u64(m_prime_disc);
    let m2_factors = factor_u64(m2_disc);
    let allowed: Vec<(u64, u32)> = m_factors
        .iter()
        .filter_map(|&(p, v)| (v >= 2).then_some((p, v / 2)))
        .collect();
    let index_divides = allowed
        .iter()
        .map(|&(p, v)| if v == 1 { p.to_string() } else { format!("{p}^{v}") })
        .collect::<Vec<_>>()
        .join(" · ");
    // odd primes where disc(M₂) is a unit cannot divide the index: M₂ has
    // full rank 53 in characteristic 2, so NS there is already p-maximal
    let excluded: Vec<u64> = allowed
        .iter()
        .map(|&(p, _)| p)
        .filter(|&p| p != 2 && m2_factors.iter().all(|&(m2p, _)| m2p != p))
        .collect();
    let remaining: Vec<(u64, u32)> = allowed
        .iter()
        .copied()
        .filter(|(p, _)| !excluded.contains(p))
        .collect();
    if remaining != [(2, 4)] {
        return Err(fail(BLOCK, format!("index bound {remaining:?} is not a power of 2 up to 2^4")));
    }

    Ok(NsIndexBlock {
        n_prime: LatticeOut {
            rank: computed(rep.n_prime.rank as u32),
            disc: computed(rep.n_prime.disc.to_string()),
            disc_factored: "1".to_string(),
        },
        m_prime: LatticeOut {
            rank: computed(rep.m_prime.rank as u32),
            disc: computed(rep.m_prime.disc.to_string()),
            disc_factored: factored(m_prime_disc),
        },
        m2: LatticeOut {
            rank: computed(rep.m2.rank as u32),
            disc: computed(rep.m2.disc.to_string()),
            disc_factored: factored(m2_disc),
        },
        d2_line_indices: rep.d2_line_indices.clone(),
        extra_lines_for_m2: rep.extra_for_m2.clone(),
        index_divides,
        excluded_primes: excluded,
        index_bound_exponent: computed(4),
        argument: vec![
            format!("[NS : M']^2 divides disc(M') = {}", factored(m_prime_disc)),
            format!(
                "M2 extends M' to full rank 53 in characteristic 2 with disc(M2) = {}, a unit at 3 and 11, so neither divides the index",
                factored(m2_disc)
            ),
            "hence [NS : M'] = 2^i with 0 <= i <= 4".into(),
        ],
    })
}

/// Assemble and verify the full certificate. Runs every block; the first
/// failing check aborts with `BlockFailed`.
pub fn run_certificate(options: &CertifyOptions) -> Result<Certificate> {
    let constants = constants_block();
    let lower_bound = lower_bound_block()?;
    let upper_bound = upper_bound_block(&options.primes, &options.cache)?;
    let bad_primes = bad_primes_block()?;
    let ns_index = ns_index_block()?;

    if lower_bound.rho_lower.value != upper_bound.rho_upper.value {
        return Err(fail(
            "conclusion",
            format!(
                "bounds disagree: {} vs {}",
                lower_bound.rho_lower.value, upper_bound.rho_upper.value
            ),
        ));
    }
    let rho = lower_bound.rho_lower.value;
    let conclusion = Conclusion {
        rho_quintic_complex: computed(rho),
        ns_index_form: format!("2^i, 0 <= i <= {}", ns_index.index_bound_exponent.value),
        all_blocks_verified: true,
    };
    Ok(Certificate {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp_unix_seconds: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .unwrap_or_default()
            .as_secs(),
        constants,
        lower_bound,
        upper_bound,
        bad_primes,
        ns_index,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip_timestamp(cert: &Certificate) -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(&cert.to_json()).unwrap();
        v.as_object_mut().unwrap().remove("timestamp_unix_seconds");
        v
    }

    #[test]
    fn default_run_concludes_41() {
        let cert = run_certificate(&CertifyOptions::default()).unwrap();
        assert_eq!(cert.conclusion.rho_quintic_complex.value, 41);
        assert!(cert.conclusion.all_blocks_verified);
        assert_eq!(cert.lower_bound.line_gram_rank.value, 40);
        assert_eq!(cert.lower_bound.godeaux_image_rank.value, 8);
        assert_eq!(cert.lower_bound.godeaux_image_disc.value, "-2");
        assert_eq!(cert.lower_bound.rho_lower.value, 41);
        assert!(cert.upper_bound.disjoint);
        assert_eq!(cert.upper_bound.rho_k3.value, 19);
        assert_eq!(cert.upper_bound.rank_t_quintic.value, 12);
        assert_eq!(cert.upper_bound.rho_upper.value, 41);
        assert_eq!(cert.bad_primes.k3_bad.value, vec![2, 3, 5, 11, 17, 433]);
        assert_eq!(cert.bad_primes.k3_merge_only.value, vec![83, 151]);
        assert_eq!(cert.bad_primes.quintic_bad.value, vec![3, 5, 11, 17, 433]);
        assert_eq!(cert.ns_index.index_bound_exponent.value, 4);
        assert_eq!(cert.ns_index.excluded_primes, vec![3, 11]);
        assert_eq!(cert.ns_index.index_divides, "2^4 · 3^2 · 11^2");
        assert_eq!(cert.conclusion.ns_index_form, "2^i, 0 <= i <= 4");

        // the resolved Lefschetz data at the default primes
        let l19 = &cert.upper_bound.primes[0].lefschetz;
        assert_eq!((l19.span_trace, l19.a_q, l19.eps1, l19.eps2), (40, -28, -1, -1));
        let l23 = &cert.upper_bound.primes[1].lefschetz;
        assert_eq!((l23.span_trace, l23.a_q, l23.eps1, l23.eps2), (40, -20, -1, -1));

        // fiber configurations serialize with Euler numbers summing to 24
        let euler: usize = cert
            .upper_bound
            .reference_fibers
            .iter()
            .map(|f| f.degree * f.euler)
            .sum();
        assert_eq!(euler, 24);
    }

    #[test]
    fn certificates_are_deterministic_modulo_timestamp() {
        let one = run_certificate(&CertifyOptions::default()).unwrap();
        let two = run_certificate(&CertifyOptions::default()).unwrap();
        assert_eq!(strip_timestamp(&one), strip_timestamp(&two));
    }

    #[test]
    fn single_prime_is_refused() {
        let opts = CertifyOptions {
            primes: vec![19],
            cache: CountCache::disabled(),
        };
        match run_certificate(&opts).unwrap_err() {
            Error::BlockFailed(block, msg) => {
                assert_eq!(block, "upper_bound");
                assert!(msg.contains("two distinct primes"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn bad_prime_is_refused() {
        let opts = CertifyOptions {
            primes: vec![19, 17],
            cache: CountCache::disabled(),
        };
        match run_certificate(&opts).unwrap_err() {
            Error::BlockFailed(block, msg) => {
                assert_eq!(block, "upper_bound");
                assert!(msg.contains("17"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
