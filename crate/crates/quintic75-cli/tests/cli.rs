//! End-to-end tests of the installed binary: output shapes, cache behavior,
//! and the 0/1/2 exit-code contract.

use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quintic75"));
    cmd.env_remove("QUINTIC75_CACHE");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout_text(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is UTF-8")
}

#[test]
fn gram_summary_and_json() {
    let summary = stdout_text(&["lines", "gram"]);
    assert!(summary.contains("75 lines over Q(b): Gram rank 40"));

    let report = stdout_json(&["lines", "gram", "--field", "qb", "--json"]);
    assert_eq!(report["rank"], 40);
    assert_eq!(report["lines"], 75);
    let gram = report["gram"].as_array().unwrap();
    assert_eq!(gram.len(), 75);
    assert!(gram.iter().all(|row| row.as_array().unwrap().len() == 75));
    // Every line is a (-3)-curve on the quintic.
    assert!((0..75).all(|i| gram[i][i] == -3));

    // Reduction mod 19 relabels the lines but preserves the pairing values:
    // same rank and the same multiset of intersection numbers.
    let reduced = stdout_json(&["lines", "gram", "--field", "fp", "--p", "19", "--json"]);
    assert_eq!(reduced["rank"], 40);
    let entries = |g: &serde_json::Value| {
        let mut all: Vec<i64> = g
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|row| row.as_array().unwrap().iter().map(|v| v.as_i64().unwrap()))
            .collect();
        all.sort_unstable();
        all
    };
    assert_eq!(entries(&reduced["gram"]), entries(&report["gram"]));
}

#[test]
fn counts_as_json_records() {
    let records = stdout_json(&["count", "--p", "19", "--json"]);
    assert_eq!(records[0]["surface"], "S");
    assert_eq!(records[0]["count"], 915);

    let records = stdout_json(&["k3", "count", "--p", "23", "--all-roots", "--json"]);
    let records = records.as_array().unwrap();
    assert_eq!(records.len(), 2);
    assert!(records.iter().all(|r| r["surface"] == "X" && r["count"] == 924));

    let summary = stdout_text(&["count", "--p", "23", "--root", "1"]);
    assert!(summary.contains("#S(F_23^1) = 1255"));
}

#[test]
fn fiber_configurations() {
    let special = stdout_text(&["k3", "fibers"]);
    assert!(special.contains("4 x I1 + 8 x I2 + 1 x I4"));
    assert!(special.contains("Euler sum 24"));

    let generic = stdout_text(&["k3", "fibers", "--lambda", "1"]);
    assert!(generic.contains("8 x I1 + 6 x I2 + 1 x I4"));

    let report = stdout_json(&["k3", "fibers", "--json"]);
    assert_eq!(report["euler_sum"], 24);
    assert_eq!(report["type_counts"]["I2"], 8);
    let i4 = report["places"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["type"] == "I4")
        .expect("an I4 place");
    assert_eq!(i4["split"], true);
    assert_eq!(i4["place"], "t = ∞");
}

#[test]
fn bad_prime_reports() {
    let k3 = stdout_json(&["badprimes", "--target", "k3", "--json"]);
    assert_eq!(k3["bad"], serde_json::json!([2, 3, 5, 11, 17, 433]));
    assert_eq!(k3["merge_only"], serde_json::json!([83, 151]));

    let quintic = stdout_json(&["badprimes", "--target", "quintic", "--json"]);
    assert_eq!(quintic["bad"], serde_json::json!([3, 5, 11, 17, 433]));
    assert_eq!(quintic["two_is_good"], true);

    // The same report is reachable under the k3 namespace.
    let nested = stdout_text(&["k3", "badprimes"]);
    assert!(nested.contains("merge-only [83, 151]"));
}

#[test]
fn lattice_and_godeaux_summaries() {
    let lattice = stdout_text(&["lattice"]);
    assert!(lattice.contains("N rank 8 disc -2"));
    assert!(lattice.contains("M' rank 41 disc 1517978880"));
    assert!(lattice.contains("M2 rank 53 disc 1638400"));

    let godeaux = stdout_json(&["godeaux", "--json"]);
    assert_eq!(godeaux["orbits"], 15);
    assert_eq!(godeaux["n"]["rank"], 8);
    assert_eq!(godeaux["n"]["disc"], "-2");
    let checks = godeaux["fixed_point_checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["all_off_surface"] == true));
}

#[test]
fn certify_writes_certificate_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cert_path = dir.path().join("certificate.json");
    let cache_dir = dir.path().join("counts");

    let out = bin()
        .args(["certify", "--cache"])
        .arg(&cache_dir)
        .arg("--out")
        .arg(&cert_path)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "certify failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = String::from_utf8(out.stdout).unwrap();
    assert!(summary.contains("conclusion: rho = 41"));
    assert!(summary.contains("2^i, 0 <= i <= 4"));

    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert["conclusion"]["rho_quintic_complex"]["value"], 41);
    assert_eq!(cert["conclusion"]["all_blocks_verified"], true);
    assert_eq!(cert["upper_bound"]["disjoint"], true);

    // One cache file per (surface, prime, root): S and X at 19 (one root)
    // and at 23 (two roots).
    let mut names: Vec<String> = std::fs::read_dir(&cache_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "S-p19-e1-root0.json",
            "S-p23-e1-root0.json",
            "S-p23-e1-root1.json",
            "X-p19-e1-root0.json",
            "X-p23-e1-root0.json",
            "X-p23-e1-root1.json",
        ]
    );
}

#[test]
fn cache_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("QUINTIC75_CACHE", dir.path())
        .args(["count", "--p", "19"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("S-p19-e1-root0.json").exists());
}

#[test]
fn failures_exit_one_usage_exits_two() {
    let single = run(&["certify", "--p", "19"]);
    assert_eq!(single.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&single.stderr).contains("two distinct primes"));

    let bad_reduction = run(&["count", "--p", "2"]);
    assert_eq!(bad_reduction.status.code(), Some(1));

    let no_root = run(&["count", "--p", "7"]);
    assert_eq!(no_root.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&no_root.stderr).contains("no root"));

    let bad_lambda = run(&["k3", "fibers", "--lambda", "zebra"]);
    assert_eq!(bad_lambda.status.code(), Some(1));

    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));

    let conflict = run(&["count", "--p", "19", "--root", "1", "--all-roots"]);
    assert_eq!(conflict.status.code(), Some(2));
}
