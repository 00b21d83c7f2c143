//! Acceptance gate: every shipped guarantee, one test per criterion, each
//! printing a PASS/FAIL line and enforcing its runtime budget.
//!
//! The criteria drive the same claim implementations the `suite` subcommand
//! runs, pinned to the shipped fixture corpus and default budgets; the last
//! criterion runs the installed binary twice and compares reports
//! byte-for-byte.

use std::sync::Mutex;
use std::time::{Duration, Instant};
use symcoh_cli::suite::{run_suite, SuiteConfig};

/// Criteria run one at a time so the per-criterion budgets are meaningful.
static SERIAL: Mutex<()> = Mutex::new(());

fn run_criterion(number: u32, name: &str, limit: Duration, claim_ids: &[&str]) {
    let _lock = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let cfg = SuiteConfig {
        only: Some(claim_ids.iter().map(|s| s.to_string()).collect()),
        jobs: 1,
        seed: 1,
        ..SuiteConfig::default()
    };
    let t0 = Instant::now();
    let report = run_suite(&cfg).expect("suite runs");
    let elapsed = t0.elapsed();
    let ran: Vec<_> = report.claims.iter().filter(|c| c.verdict != "skipped").collect();
    assert_eq!(ran.len(), claim_ids.len(), "criterion {number}: claim ids must all exist");
    let failures: Vec<String> = ran
        .iter()
        .filter(|c| c.verdict != "pass")
        .map(|c| format!("{}: {}", c.id, c.witness.clone().unwrap_or_default()))
        .collect();
    let ok = failures.is_empty() && elapsed <= limit;
    println!(
        "criterion {number} ({name}): {} in {:.1}s (limit {}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    for note in ran.iter().flat_map(|c| &c.notes) {
        println!("  {note}");
    }
    assert!(failures.is_empty(), "criterion {number} failed: {failures:?}");
    assert!(
        elapsed <= limit,
        "criterion {number} exceeded its runtime budget: {elapsed:?} > {limit:?}"
    );
}

#[test]
fn criterion_01_complex_axioms() {
    run_criterion(
        1,
        "d after d vanishes exactly, all fixtures, degrees <= 4",
        Duration::from_secs(120),
        &["cochain/d-squared-zero"],
    );
}

#[test]
fn criterion_02_subcomplex_closure() {
    run_criterion(
        2,
        "each flavor subgroup is closed under the coboundary",
        Duration::from_secs(120),
        &["cochain/subcomplex-closure"],
    );
}

#[test]
fn criterion_03_oracle_agreement() {
    run_criterion(
        3,
        "engine equals oracle on all in-budget instances",
        Duration::from_secs(300),
        &["cohomology/engine-vs-oracle", "linalg/homology-vs-oracle"],
    );
}

#[test]
fn criterion_04_comparison_maps() {
    run_criterion(
        4,
        "inclusion-induced maps: low-degree bijectivity/injectivity claims",
        Duration::from_secs(900),
        &[
            "cohomology/alpha-iso-low-degrees",
            "cohomology/alpha3-injective-torsion-free",
            "cohomology/gamma-bijective",
        ],
    );
}

#[test]
fn criterion_05_symmetry_criteria() {
    run_criterion(
        5,
        "sampled symmetry criteria for cocycles and coboundary witnesses",
        Duration::from_secs(300),
        &[
            "cohomology/symmetry-criterion-flags",
            "cohomology/coboundary-witness-flags",
            "cohomology/pattern-equality-findings",
        ],
    );
}

#[test]
fn criterion_06_crossed_extension_suite() {
    run_criterion(
        6,
        "crossed-extension validation, cocycle classes and section identities",
        Duration::from_secs(120),
        &[
            "crossed/fixtures-validate",
            "crossed/cocycle-normalized",
            "crossed/class-section-independence",
            "crossed/symmetry-criterion-equivalence",
            "crossed/definition-vs-criterion",
        ],
    );
}

#[test]
fn criterion_07_classification_consistency() {
    run_criterion(
        7,
        "symmetric sections exist exactly for classes of symmetric cocycles",
        Duration::from_secs(600),
        &["crossed/main-theorem-consistency"],
    );
}

#[test]
fn criterion_08_degree_two_crosscheck() {
    run_criterion(
        8,
        "symmetric 2-cocycle extensions admit inverse-preserving sections; the order-4 extension does not",
        Duration::from_secs(60),
        &["crossed/hs2-crosscheck"],
    );
}

#[test]
fn criterion_09_two_group_layer() {
    run_criterion(
        9,
        "2-group laws and the monoidal/symmetric section-functor equivalences",
        Duration::from_secs(300),
        &[
            "twogroup/bifunctor-laws",
            "twogroup/monoidal-iff-vanishing",
            "twogroup/symmetric-iff-criterion",
            "twogroup/monoidal-implies-symmetric",
            "twogroup/split-iff-zero-class",
        ],
    );
}

#[test]
fn criterion_10_deterministic_reports() {
    let _lock = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let t0 = Instant::now();
    let run = |jobs: &str| {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_symcoh"))
            .args(["suite", "--format", "json", "--seed", "42", "--jobs", jobs])
            .output()
            .expect("suite binary runs");
        assert!(out.status.success(), "suite run with --jobs {jobs} failed");
        out.stdout
    };
    let first = run("1");
    let second = run("4");
    let ok = first == second;
    println!(
        "criterion 10 (reports are byte-identical across --jobs): {} in {:.1}s",
        if ok { "PASS" } else { "FAIL" },
        t0.elapsed().as_secs_f64()
    );
    assert!(ok, "structured reports differ between --jobs 1 and --jobs 4");
}
