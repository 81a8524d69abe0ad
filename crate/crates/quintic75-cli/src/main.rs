//! Command-line driver: line lattices, point counts, fiber configurations,
//! bad-prime analysis, and the end-to-end Picard-number certificate.
//!
//! Exit codes: 0 on success, 1 on a verification failure or computational
//! error, 2 on a usage error (clap's default).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use quintic75::certificate::{run_certificate, CertifyOptions};
use quintic75::counting::{s_count, x_count, CountCache, CountRecord};
use quintic75::exact::{FinField, NumberField, Rationals};
use quintic75::fibration::{
    bad_primes_k3, bad_primes_quintic, classify_fibers, reference_config, FiberConfig,
};
use quintic75::lines::{a_from_b, gram, lines75, lines75_nf};
use quintic75::quotient::{d2_lattices, godeaux_lattice, r_fixed_point_check, r_orbits};
use quintic75::zlinalg::rank_exact;

#[derive(Parser)]
#[command(name = "quintic75", version, about = "Exact verification that the Barth quintic has Picard number 41")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The 75 lines and their intersection Gram matrix.
    Lines {
        #[command(subcommand)]
        action: LinesAction,
    },
    /// All lattice reports: line span, Godeaux image N, and the
    /// characteristic-2 package N', M', M2.
    Lattice {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Count points of the quintic S over a finite field.
    Count {
        #[command(flatten)]
        reduction: ReductionArgs,
        #[command(flatten)]
        cache: CacheArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The K3 quotient: fiber configurations, point counts, bad primes.
    K3 {
        #[command(subcommand)]
        action: K3Action,
    },
    /// Godeaux-quotient checks: image lattice N and the fixed-point scan.
    Godeaux {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bad-prime analysis for the K3 quotient or the quintic.
    Badprimes {
        #[arg(long, value_enum, default_value_t = BadPrimesTarget::K3)]
        target: BadPrimesTarget,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Assemble and verify the full Picard-number certificate.
    Certify {
        /// Primes for the two-prime square-class comparison (exactly two).
        #[arg(long = "p", num_args = 1, action = clap::ArgAction::Append)]
        p: Vec<u64>,
        #[command(flatten)]
        cache: CacheArg,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum LinesAction {
    /// Print the 75×75 Gram matrix and its rank.
    Gram {
        /// Coefficient field: the number field `qb`, or `fp` with --p/--e.
        #[arg(long, value_enum, default_value_t = LineField::Qb)]
        field: LineField,
        #[command(flatten)]
        reduction: OptionalReductionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum K3Action {
    /// Kodaira fiber configuration of the elliptic fibration.
    Fibers {
        /// Rational pencil parameter (e.g. `1` or `-3/2`); default is the
        /// special parameter a over ℚ(b).
        #[arg(long, conflicts_with = "p")]
        lambda: Option<String>,
        #[command(flatten)]
        reduction: OptionalReductionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Count points of X over a finite field by fiber sums.
    Count {
        #[command(flatten)]
        reduction: ReductionArgs,
        #[command(flatten)]
        cache: CacheArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bad-prime analysis (same as the top-level `badprimes`).
    Badprimes {
        #[arg(long, value_enum, default_value_t = BadPrimesTarget::K3)]
        target: BadPrimesTarget,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LineField {
    /// ℚ(b), the field of definition of the surface.
    Qb,
    /// 𝔽_{p^e} at a chosen root of b⁴ − b³ + 1.
    Fp,
}

#[derive(Clone, Copy, ValueEnum)]
enum BadPrimesTarget {
    K3,
    Quintic,
}

#[derive(Args)]
struct ReductionArgs {
    /// Characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree of 𝔽_{p^e}.
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Root of b⁴ − b³ + 1 to use (index into the field's root list).
    #[arg(long, default_value_t = 0, conflicts_with = "all_roots")]
    root: u32,
    /// Report one record per root instead.
    #[arg(long)]
    all_roots: bool,
}

#[derive(Args)]
struct OptionalReductionArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long, default_value_t = 0)]
    root: u32,
}

#[derive(Args)]
struct CacheArg {
    /// Count-cache directory (falls back to $QUINTIC75_CACHE).
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Print the full JSON report to stdout instead of the summary.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, value: &serde_json::Value, summary: &str) -> Result<(), String> {
        let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
        if let Some(path) = &self.out {
            fs::write(path, format!("{text}\n"))
                .map_err(|e| format!("writing {}: {e}", path.display()))?;
        }
        if self.json {
            println!("{text}");
        } else {
            println!("{summary}");
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::Lines { action } => match action {
            LinesAction::Gram {
                field,
                reduction,
                output,
            } => lines_gram(field, &reduction, &output),
        },
        Command::Lattice { output } => lattice(&output),
        Command::Count {
            reduction,
            cache,
            output,
        } => counts(&reduction, &cache, &output, "S"),
        Command::K3 { action } => match action {
            K3Action::Fibers {
                lambda,
                reduction,
                output,
            } => fibers(lambda.as_deref(), &reduction, &output),
            K3Action::Count {
                reduction,
                cache,
                output,
            } => counts(&reduction, &cache, &output, "X"),
            K3Action::Badprimes { target, output } => badprimes(target, &output),
        },
        Command::Godeaux { output } => godeaux(&output),
        Command::Badprimes { target, output } => badprimes(target, &output),
        Command::Certify { p, cache, output } => certify(&p, &cache, &output),
    }
}

fn lines_gram(
    field: LineField,
    reduction: &OptionalReductionArgs,
    output: &OutputArgs,
) -> Result<(), String> {
    let (label, g) = match field {
        LineField::Qb => {
            let lines = lines75_nf().map_err(|e| e.to_string())?;
            ("Q(b)".to_string(), gram(&NumberField, &lines))
        }
        LineField::Fp => {
            let p = reduction.p.ok_or("--field fp needs --p")?;
            let f = FinField::extension(p, reduction.e).map_err(|e| e.to_string())?;
            let roots = f.b_roots().map_err(|e| e.to_string())?;
            let b = roots
                .get(reduction.root as usize)
                .ok_or_else(|| format!("no root with index {} in F_{p}^{}", reduction.root, reduction.e))?;
            let lines = lines75(&f, b).map_err(|e| e.to_string())?;
            (format!("F_{p}^{}", reduction.e), gram(&f, &lines))
        }
    };
    let rank = rank_exact(&g);
    let matrix: Vec<Vec<i64>> = (0..g.rows)
        .map(|i| {
            (0..g.cols)
                .map(|j| i64::try_from(g.at(i, j)).expect("line pairings are small"))
                .collect()
        })
        .collect();
    output.emit(
        &json!({ "field": label, "lines": g.rows, "rank": rank, "gram": matrix }),
        &format!("{} lines over {label}: Gram rank {rank}", g.rows),
    )
}

fn lattice(output: &OutputArgs) -> Result<(), String> {
    let nf_lines = lines75_nf().map_err(|e| e.to_string())?;
    let line_rank = rank_exact(&gram(&NumberField, &nf_lines));
    let n = godeaux_lattice(&NumberField, &nf_lines).map_err(|e| e.to_string())?;
    let f16 = FinField::extension(2, 4).map_err(|e| e.to_string())?;
    let d2 = d2_lattices(&f16).map_err(|e| e.to_string())?;
    let report = |r: &quintic75::quotient::LatticeReport| {
        json!({ "name": r.name, "rank": r.rank, "disc": r.disc.to_string() })
    };
    let value = json!({
        "line_gram_rank": line_rank,
        "n": report(&n),
        "n_prime": report(&d2.n_prime),
        "m_prime": report(&d2.m_prime),
        "m2": report(&d2.m2),
        "d2_line_indices": d2.d2_line_indices,
        "extra_lines_for_m2": d2.extra_for_m2,
    });
    let summary = format!(
        "line span rank {line_rank}; N rank {} disc {}; N' rank {} disc {}; M' rank {} disc {}; M2 rank {} disc {}",
        n.rank, n.disc, d2.n_prime.rank, d2.n_prime.disc,
        d2.m_prime.rank, d2.m_prime.disc, d2.m2.rank, d2.m2.disc
    );
    output.emit(&value, &summary)
}

fn count_records(
    reduction: &ReductionArgs,
    cache: &CountCache,
    surface: &str,
) -> Result<Vec<CountRecord>, String> {
    let field = FinField::extension(reduction.p, reduction.e).map_err(|e| e.to_string())?;
    let n_roots = field.b_roots().map_err(|e| e.to_string())?.len() as u32;
    if n_roots == 0 {
        return Err(format!(
            "b^4 - b^3 + 1 has no root in F_{}^{}; try a larger --e",
            reduction.p, reduction.e
        ));
    }
    let roots: Vec<u32> = if reduction.all_roots {
        (0..n_roots).collect()
    } else {
        vec![reduction.root]
    };
    let mut records = Vec::new();
    for root in roots {
        let rec = match surface {
            "S" => s_count(reduction.p, reduction.e, root, cache),
            _ => x_count(reduction.p, reduction.e, root, cache),
        }
        .map_err(|e| e.to_string())?;
        records.push(rec);
    }
    Ok(records)
}

fn counts(
    reduction: &ReductionArgs,
    cache: &CacheArg,
    output: &OutputArgs,
    surface: &str,
) -> Result<(), String> {
    let cache = CountCache::resolve(cache.cache.clone());
    let records = count_records(reduction, &cache, surface)?;
    let summary = records
        .iter()
        .map(|r| {
            format!(
                "#{}(F_{}^{}) = {} (root {}, lambda = {})",
                r.surface, r.p, r.e, r.count, r.root, r.lambda
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    output.emit(&serde_json::to_value(&records).map_err(|e| e.to_string())?, &summary)
}

fn fiber_json(config: &FiberConfig) -> serde_json::Value {
    json!({
        "places": config.places.iter().map(|p| json!({
            "place": p.place,
            "degree": p.degree,
            "type": p.kodaira.label(),
            "split": p.split,
            "euler": p.kodaira.euler(),
        })).collect::<Vec<_>>(),
        "type_counts": config.type_counts(),
        "euler_sum": config.euler_sum(),
    })
}

fn fibers(
    lambda: Option<&str>,
    reduction: &OptionalReductionArgs,
    output: &OutputArgs,
) -> Result<(), String> {
    let (label, config) = if let Some(text) = lambda {
        let l = num_rational::BigRational::from_str(text)
            .map_err(|e| format!("parsing lambda: {e}"))?;
        let config = classify_fibers(&Rationals, &l).map_err(|e| e.to_string())?;
        (format!("lambda = {text} over Q"), config)
    } else if let Some(p) = reduction.p {
        let f = FinField::extension(p, reduction.e).map_err(|e| e.to_string())?;
        let roots = f.b_roots().map_err(|e| e.to_string())?;
        let b = roots
            .get(reduction.root as usize)
            .ok_or_else(|| format!("no root with index {} in F_{p}^{}", reduction.root, reduction.e))?;
        let l = a_from_b(&f, b).map_err(|e| e.to_string())?;
        let config = classify_fibers(&f, &l).map_err(|e| e.to_string())?;
        (format!("lambda = a over F_{p}^{}", reduction.e), config)
    } else {
        ("lambda = a over Q(b)".to_string(), reference_config().map_err(|e| e.to_string())?)
    };
    let summary = format!(
        "{label}: {} (Euler sum {})",
        config.summary(),
        config.euler_sum()
    );
    output.emit(&fiber_json(&config), &summary)
}

fn godeaux(output: &OutputArgs) -> Result<(), String> {
    let nf_lines = lines75_nf().map_err(|e| e.to_string())?;
    let n = godeaux_lattice(&NumberField, &nf_lines).map_err(|e| e.to_string())?;
    let orbits = r_orbits(&NumberField, &nf_lines).map_err(|e| e.to_string())?;
    let mut checks = Vec::new();
    for p in [5u64, 11, 19] {
        let rep = r_fixed_point_check(p).map_err(|e| e.to_string())?;
        checks.push(json!({
            "p": rep.p,
            "e": rep.e,
            "fixed_points": rep.fixed_points,
            "all_off_surface": rep.all_off_surface,
        }));
        if !rep.all_off_surface {
            return Err(format!("fixed point on the surface in characteristic {p}"));
        }
    }
    let value = json!({
        "orbits": orbits.len(),
        "n": { "rank": n.rank, "disc": n.disc.to_string() },
        "fixed_point_checks": checks,
    });
    let summary = format!(
        "{} free orbits; N rank {} disc {}; rotation fixed points avoid the pencil",
        orbits.len(),
        n.rank,
        n.disc
    );
    output.emit(&value, &summary)
}

fn badprimes(target: BadPrimesTarget, output: &OutputArgs) -> Result<(), String> {
    match target {
        BadPrimesTarget::K3 => {
            let rep = bad_primes_k3().map_err(|e| e.to_string())?;
            let value = json!({
                "candidates": rep.candidates,
                "bad": rep.bad,
                "merge_only": rep.merge_only,
                "norms": rep.norms,
            });
            let summary = format!(
                "K3 bad primes {:?}, merge-only {:?} (candidates {:?})",
                rep.bad, rep.merge_only, rep.candidates
            );
            output.emit(&value, &summary)
        }
        BadPrimesTarget::Quintic => {
            let rep = bad_primes_quintic(1 << 16).map_err(|e| e.to_string())?;
            let value = json!({
                "bad": rep.bad,
                "two_is_good": rep.two_is_good,
                "resultants": rep.resultants.iter()
                    .map(|(l, r)| json!([l, r.to_string()]))
                    .collect::<Vec<_>>(),
            });
            let summary = format!(
                "quintic bad primes {:?}; characteristic 2 stays good: {}",
                rep.bad, rep.two_is_good
            );
            output.emit(&value, &summary)
        }
    }
}

fn certify(primes: &[u64], cache: &CacheArg, output: &OutputArgs) -> Result<(), String> {
    let options = CertifyOptions {
        primes: if primes.is_empty() {
            vec![19, 23]
        } else {
            primes.to_vec()
        },
        cache: CountCache::resolve(cache.cache.clone()),
    };
    let cert = run_certificate(&options).map_err(|e| e.to_string())?;
    let value = serde_json::to_value(&cert).map_err(|e| e.to_string())?;
    output.emit(&value, &cert.summary())
}
