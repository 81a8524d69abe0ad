//! The acceptance gauntlet: eleven criteria, one test and one printed
//! pass/fail line each, with hard runtime budgets (run with `--nocapture`
//! to see the lines on success).

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;

use quintic75::certificate::{run_certificate, CertifyOptions};
use quintic75::counting::{
    artin_tate_class, count_projective_surface, k3_trace_candidates, lefschetz_cross_check,
    line_span_trace, quintic_rho_reduction, s_count, van_luijk_verdict, x_count, CountCache,
    TraceCandidate,
};
use quintic75::exact::{square_class, Field, FinField, NumberField, Rationals};
use quintic75::fibration::{bad_primes_k3, bad_primes_quintic, classify_fibers, reference_config};
use quintic75::lines::{char2_lines, frobenius_permutation, gram, lines75, lines75_nf};
use quintic75::pencil::{build_pencil, pencil_self_test, permute_coordinates};
use quintic75::quotient::{d2_lattices, godeaux_gram, godeaux_lattice};
use quintic75::zlinalg::{invariant_factors, rank_exact, GramLattice, ZMat};

fn criterion(number: u32, what: &str, limit: Duration, work: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = work();
    let elapsed = start.elapsed();
    let verdict = if outcome.is_ok() && elapsed <= limit {
        "PASS"
    } else {
        "FAIL"
    };
    println!("acceptance {number:>2}/11: {verdict} ({elapsed:.2?}, limit {limit:.0?}) — {what}");
    if let Err(e) = outcome {
        panic!("criterion {number} failed: {e}");
    }
    assert!(
        elapsed <= limit,
        "criterion {number} exceeded its {limit:?} budget (took {elapsed:.2?})"
    );
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

#[test]
fn criterion_01_line_gram_rank() {
    criterion(1, "75 lines over Q(b), Gram rank 40", Duration::from_secs(5), || {
        let lines = lines75_nf().map_err(|e| e.to_string())?;
        expect("line count", lines.len(), 75)?;
        expect("Gram rank", rank_exact(&gram(&NumberField, &lines)), 40)
    });
}

#[test]
fn criterion_02_godeaux_image_lattice() {
    criterion(2, "Godeaux image N: rank 8, disc -2", Duration::from_secs(5), || {
        let lines = lines75_nf().map_err(|e| e.to_string())?;
        let n = godeaux_lattice(&NumberField, &lines).map_err(|e| e.to_string())?;
        expect("rank", n.rank, 8)?;
        expect("disc", n.disc, BigInt::from(-2))
    });
}

#[test]
fn criterion_03_char2_lines() {
    criterion(3, "characteristic 2: 135 lines, Gram rank 53", Duration::from_secs(10), || {
        let f16 = FinField::extension(2, 4).map_err(|e| e.to_string())?;
        let found = char2_lines(&f16).map_err(|e| e.to_string())?;
        expect("line count", found.lines.len(), 135)?;
        expect("Gram rank", rank_exact(&gram(&f16, &found.lines)), 53)
    });
}

#[test]
fn criterion_04_char2_lattice_package() {
    criterion(4, "N' (9, 1), M' (41, 2^8·3^4·5·11^4), M2 (53, 2^16·5^2)", Duration::from_secs(30), || {
        let f16 = FinField::extension(2, 4).map_err(|e| e.to_string())?;
        let d2 = d2_lattices(&f16).map_err(|e| e.to_string())?;
        expect("N' rank", d2.n_prime.rank, 9)?;
        expect("N' disc", d2.n_prime.disc.clone(), BigInt::one())?;
        expect("M' rank", d2.m_prime.rank, 41)?;
        expect("M' disc", d2.m_prime.disc.clone(), BigInt::from(1_517_978_880u64))?;
        expect("M2 rank", d2.m2.rank, 53)?;
        expect("M2 disc", d2.m2.disc.clone(), BigInt::from(1_638_400u64))
    });
}

#[test]
fn criterion_05_k3_counts() {
    criterion(5, "#X(F_19) = 676, #X(F_23) = 924 (each count < 10 s)", Duration::from_secs(20), || {
        let cache = CountCache::disabled();
        let t = Instant::now();
        let r19 = x_count(19, 1, 0, &cache).map_err(|e| e.to_string())?;
        let d19 = t.elapsed();
        expect("#X(F_19)", r19.count, 676)?;
        if d19 > Duration::from_secs(10) {
            return Err(format!("count at 19 took {d19:.2?}"));
        }

        let f23 = FinField::extension(23, 1).map_err(|e| e.to_string())?;
        let n_roots = f23.b_roots().map_err(|e| e.to_string())?.len();
        let t = Instant::now();
        let mut counts = Vec::new();
        for root in 0..n_roots as u32 {
            counts.push(x_count(23, 1, root, &cache).map_err(|e| e.to_string())?.count);
        }
        let d23 = t.elapsed();
        if !counts.contains(&924) {
            return Err(format!("no root of b^4-b^3+1 mod 23 yields 924: {counts:?}"));
        }
        if d23 > Duration::from_secs(10 * n_roots as u64) {
            return Err(format!("counts at 23 took {d23:.2?} for {n_roots} roots"));
        }
        Ok(())
    });
}

fn rendered(candidates: &[TraceCandidate]) -> Vec<(i64, Option<String>)> {
    candidates
        .iter()
        .map(|c| (c.a_q, c.d.as_ref().map(|d| d.to_string())))
        .collect()
}

fn table(entries: &[(i64, &str)]) -> Vec<(i64, Option<String>)> {
    entries
        .iter()
        .map(|(a, d)| (*a, Some(d.to_string())))
        .collect()
}

#[test]
fn criterion_06_candidate_tables() {
    criterion(6, "trace/square-class tables at 19 and 23, byte-exact", Duration::from_secs(5), || {
        let got19 = rendered(&k3_trace_candidates(676, 19));
        let want19 = table(&[(29, "-67"), (10, "-21"), (-9, "-29·47"), (-28, "-3·5·11")]);
        expect("table at 19", got19, want19)?;

        let got23 = rendered(&k3_trace_candidates(924, 23));
        let want23 = table(&[(26, "-10"), (3, "-43"), (-20, "-3·11·13"), (-43, "-3·89")]);
        expect("table at 23", got23, want23)
    });
}

#[test]
fn criterion_07_van_luijk_verdict() {
    criterion(7, "disjoint D-sets => rho(X) = 19 => certificate rho(S) = 41", Duration::from_secs(60), || {
        let verdict = van_luijk_verdict(&k3_trace_candidates(676, 19), &k3_trace_candidates(924, 23));
        expect("disjoint", verdict.disjoint, true)?;
        expect("rho(X)", verdict.rho_x, Some(19))?;
        expect("rho(S) bound", verdict.rho_s, Some(41))?;

        let cert = run_certificate(&CertifyOptions::default()).map_err(|e| e.to_string())?;
        expect("conclusion", cert.conclusion.rho_quintic_complex.value, 41)?;
        expect("all blocks verified", cert.conclusion.all_blocks_verified, true)
    });
}

#[test]
fn criterion_08_rho_of_reductions() {
    criterion(8, "rho = 45 at p = 19, 23 (direct #S < 1 s) with Lefschetz cross-check", Duration::from_secs(30), || {
        let cache = CountCache::disabled();
        for (p, s_expected, x_expected) in [(19u64, 915u64, 676u64), (23, 1255, 924)] {
            let t = Instant::now();
            let s = s_count(p, 1, 0, &cache).map_err(|e| e.to_string())?;
            let ds = t.elapsed();
            if ds > Duration::from_secs(1) {
                return Err(format!("#S(F_{p}) enumeration took {ds:.2?}"));
            }
            expect("#S", s.count, s_expected)?;
            expect("rho of the reduction", quintic_rho_reduction(s.count, p, 1), Ok(45))?;

            let x = x_count(p, 1, 0, &cache).map_err(|e| e.to_string())?;
            expect("#X", x.count, x_expected)?;

            let field = FinField::extension(p, 1).map_err(|e| e.to_string())?;
            let b = field.b_roots().map_err(|e| e.to_string())?[0];
            let lines = lines75(&field, &b).map_err(|e| e.to_string())?;
            let g = gram(&field, &lines);
            let perm = frobenius_permutation(&field, &lines, field.q()).map_err(|e| e.to_string())?;
            let trace = line_span_trace(&g, &perm).map_err(|e| e.to_string())?;
            let trace = i64::try_from(&trace).map_err(|e| e.to_string())?;
            let matched = lefschetz_cross_check(s.count, x.count, p as u128, trace);
            if matched.is_none() {
                return Err(format!("no Lefschetz resolution at p = {p}"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_09_bad_prime_sets() {
    criterion(9, "bad primes: K3 {2,3,5,11,17,433} (merge-only {83,151}), quintic {3,5,11,17,433}", Duration::from_secs(30), || {
        let k3 = bad_primes_k3().map_err(|e| e.to_string())?;
        expect("K3 bad", k3.bad.clone(), vec![2, 3, 5, 11, 17, 433])?;
        expect("K3 merge-only", k3.merge_only.clone(), vec![83, 151])?;
        let quintic = bad_primes_quintic(1 << 16).map_err(|e| e.to_string())?;
        expect("quintic bad", quintic.bad.clone(), vec![3, 5, 11, 17, 433])?;
        expect("2 stays good", quintic.two_is_good, true)
    });
}

#[test]
fn criterion_10_fiber_configurations() {
    criterion(10, "fibers: generic 8×I1 + 6×I2 + I4; special 4×I1 + 8×I2 + I4 split; Euler 24", Duration::from_secs(10), || {
        let type_counts = |pairs: &[(&str, usize)]| -> BTreeMap<String, usize> {
            pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
        };

        let generic = classify_fibers(&Rationals, &num_rational::BigRational::one())
            .map_err(|e| e.to_string())?;
        expect(
            "generic member",
            generic.type_counts(),
            type_counts(&[("I1", 8), ("I2", 6), ("I4", 1)]),
        )?;
        expect("generic Euler sum", generic.euler_sum(), 24)?;

        let special = reference_config().map_err(|e| e.to_string())?;
        expect(
            "special member",
            special.type_counts(),
            type_counts(&[("I1", 4), ("I2", 8), ("I4", 1)]),
        )?;
        expect("special Euler sum", special.euler_sum(), 24)?;
        let i4 = special
            .places
            .iter()
            .find(|p| p.kodaira.label() == "I4")
            .ok_or("no I4 place in the special configuration")?;
        expect("I4 split", i4.split, Some(true))
    });
}

/// Deterministic spot checks of every property suite; the randomized
/// versions live in the `properties` test target.
#[test]
fn criterion_11_property_suites() {
    criterion(11, "property suites (deterministic spot checks)", Duration::from_secs(30), || {
        // Pencil symbolic identities over several fields.
        pencil_self_test(&Rationals).map_err(|e| e.to_string())?;
        for p in [19u64, 23, 101] {
            let f = FinField::extension(p, 1).map_err(|e| e.to_string())?;
            pencil_self_test(&f).map_err(|e| e.to_string())?;
        }

        // S5-invariance of the pencil member.
        let lambda = num_rational::BigRational::new(BigInt::from(7), BigInt::from(3));
        let member = build_pencil(&Rationals, &lambda).map_err(|e| e.to_string())?;
        for sigma in [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4], [4, 3, 2, 1, 0]] {
            if permute_coordinates(&Rationals, &member.f, &sigma) != member.f {
                return Err(format!("F_lambda not invariant under {sigma:?}"));
            }
        }

        // Square classes ignore square factors.
        for d in [-67i64, -21, -1363, 45, 12] {
            for k in [2i64, 3, 10] {
                let plain = square_class(&BigInt::from(d)).map_err(|e| e.to_string())?;
                let scaled = square_class(&BigInt::from(d * k * k)).map_err(|e| e.to_string())?;
                expect("square class", scaled, plain)?;
            }
        }

        // SNF divisibility chain on the line Gram matrix.
        let lines = lines75_nf().map_err(|e| e.to_string())?;
        let g75 = gram(&NumberField, &lines);
        let factors = invariant_factors(&g75);
        for w in factors.windows(2) {
            if (&w[1] % &w[0]) != BigInt::from(0) {
                return Err(format!("invariant factors not a chain: {factors:?}"));
            }
        }

        // Image lattice is invariant under a unimodular change of generators.
        let (n15, _) = godeaux_gram(&NumberField, &lines).map_err(|e| e.to_string())?;
        let base = GramLattice::new(n15.clone()).image_lattice();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..5 {
            let mut u = ZMat::identity(15);
            for _ in 0..40 {
                let i = (next() % 15) as usize;
                let j = (next() % 15) as usize;
                if i == j {
                    continue;
                }
                let c = BigInt::from((next() % 5) as i64 - 2);
                for r in 0..15 {
                    let v = u.at(r, j) + u.at(r, i) * &c;
                    u.set(r, j, v);
                }
            }
            let twisted = u.transpose().matmul(&n15).matmul(&u);
            let img = GramLattice::new(twisted).image_lattice();
            expect("twisted image lattice", (img.rank, img.disc), (base.rank, base.disc.clone()))?;
        }

        // Weil bounds and congruences on the emitted candidate traces.
        for (count, q) in [(676u64, 19i128), (924, 23)] {
            for c in k3_trace_candidates(count, q as u128) {
                let a = c.a_q as i128;
                if a.abs() > 2 * q {
                    return Err(format!("|{a}| violates the Weil bound at q = {q}"));
                }
                if (a - (count as i128 - 1)).rem_euclid(q) != 0 {
                    return Err(format!("a = {a} fails the trace congruence at q = {q}"));
                }
                if a.abs() < 2 * q {
                    let at = artin_tate_class(c.a_q, q as u128).map_err(|e| e.to_string())?;
                    if at.a_q2.abs() > 2 * q * q {
                        return Err(format!("a_q2 = {} violates Weil at q^2", at.a_q2));
                    }
                }
            }
        }

        // Enumeration order: chart scan vs. whole-space tuple count.
        let f7 = FinField::extension(7, 1).map_err(|e| e.to_string())?;
        let member = build_pencil(&f7, &f7.from_i64(1)).map_err(|e| e.to_string())?;
        let fast = count_projective_surface(&f7, &member.f, 1 << 20).map_err(|e| e.to_string())?;
        let elems = f7.all_elements().map_err(|e| e.to_string())?;
        let mut zero_tuples = 0u128;
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    for d in &elems {
                        if f7.is_zero(&member.f.eval(&f7, &[*a, *b, *c, *d])) {
                            zero_tuples += 1;
                        }
                    }
                }
            }
        }
        expect("projective count", fast, (zero_tuples - 1) / 6)
    });
}
