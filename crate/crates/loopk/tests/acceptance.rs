//! Acceptance gate: one test per criterion, each printing a pass/fail
//! line. Every check is exact; the stated runtime ceilings are asserted
//! where the criterion carries one.
//!
//! Run with `cargo test --release -p loopk --test acceptance` (use
//! `-- --nocapture` to see the lines as they complete); the same gate is
//! reachable as `loopk verify all`.

use std::time::{Duration, Instant};

use loopk::suites;

const SEED: u64 = 0x6c6f6f706b;

fn gate(idx: usize, label: &str, report: loopk::Report, ceiling: Option<Duration>, took: Duration) {
    let status = if report.pass { "PASS" } else { "FAIL" };
    println!("criterion {idx:2} ({label}): {status}  [{took:.2?}]");
    if !report.pass {
        for c in &report.checks {
            if !c.pass {
                println!("    failed: {}", c.name);
            }
        }
    }
    assert!(report.pass, "criterion {idx} ({label}) failed");
    if let Some(limit) = ceiling {
        assert!(took <= limit, "criterion {idx} exceeded its ceiling: {took:.2?} > {limit:?}");
    }
}

#[test]
fn criterion_01_integrability() {
    let t = Instant::now();
    let r = suites::criterion_integrability(SEED);
    gate(1, "integrability", r, Some(Duration::from_secs(10)), t.elapsed());
}

#[test]
fn criterion_02_cpl_suite() {
    let t = Instant::now();
    let r = suites::criterion_cpl(SEED, loopk_core::cpl::DEFAULT_CELL_BUDGET);
    gate(2, "cpl exhaustive", r, Some(Duration::from_secs(300)), t.elapsed());
}

#[test]
fn criterion_03_wheel_qkz() {
    let t = Instant::now();
    let r = suites::criterion_qkz(SEED);
    gate(3, "wheel/qkz", r, None, t.elapsed());
}

#[test]
fn criterion_04_conj1_restrictions() {
    let t = Instant::now();
    let r = suites::criterion_conj1(SEED, 2);
    gate(4, "fixed-point restrictions", r, None, t.elapsed());
}

#[test]
fn criterion_05_conj2_pushforward() {
    let t = Instant::now();
    let r = suites::criterion_conj2(SEED);
    gate(5, "pushforward = wheel solution", r, None, t.elapsed());
}

#[test]
fn criterion_06_conj3_shape() {
    let t = Instant::now();
    let r = suites::criterion_conj3(SEED);
    gate(6, "factorized shape", r, None, t.elapsed());
}

#[test]
fn criterion_07_rs_counts() {
    let t = Instant::now();
    let r = suites::criterion_rs(SEED);
    gate(7, "loop-weight-one counts", r, None, t.elapsed());
}

#[test]
fn criterion_08_orbital_degree() {
    let t = Instant::now();
    let r = suites::criterion_degree(SEED);
    gate(8, "orbital degree", r, None, t.elapsed());
}

#[test]
fn criterion_09_degeneration() {
    let t = Instant::now();
    let r = suites::criterion_degeneration(SEED);
    gate(9, "degeneration", r, None, t.elapsed());
}

#[test]
fn criterion_10_hilbert_crosscheck() {
    let t = Instant::now();
    let r = suites::criterion_hilbert(SEED);
    gate(10, "hilbert cross-check", r, Some(Duration::from_secs(600)), t.elapsed());
}
