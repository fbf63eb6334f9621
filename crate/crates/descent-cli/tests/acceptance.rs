//! Acceptance suite: one test per bundled criterion block, each with a
//! pinned wall-time budget.
//!
//! Every test prints a `[acceptance]` verdict line (visible under
//! `--nocapture`) and fails loudly with the block's own diagnostic when a
//! frozen value drifts. Budgets are generous multiples of the observed
//! runtimes so they catch order-of-magnitude regressions, not scheduler
//! noise; blocks covering several cases get the per-case budget times the
//! case count.

use std::time::{Duration, Instant};

use descent_cli::selftest::{
    criterion_01_seq5, criterion_02_kappa, criterion_03_pic_kernel, criterion_04_brb,
    criterion_05_invertible, criterion_06_dual, criterion_07_h1_coalg, criterion_08_snf,
    criterion_09_simplicial, criterion_10_end_aut, SelftestConfig,
};

fn run_criterion(
    number: u32,
    title: &str,
    budget: Duration,
    block: fn(&SelftestConfig) -> Result<Vec<String>, String>,
) {
    let cfg = SelftestConfig::default();
    let start = Instant::now();
    let outcome = block(&cfg);
    let elapsed = start.elapsed();
    match &outcome {
        Ok(detail) => {
            println!("[acceptance] criterion {number}: {title}: PASS ({elapsed:.2?})");
            for line in detail {
                println!("[acceptance]   {line}");
            }
        }
        Err(message) => {
            println!("[acceptance] criterion {number}: {title}: FAIL ({message})");
        }
    }
    assert!(
        outcome.is_ok(),
        "criterion {number} failed: {}",
        outcome.unwrap_err()
    );
    assert!(
        elapsed < budget,
        "criterion {number} took {elapsed:?}, budget {budget:?}"
    );
}

#[test]
fn acceptance_01_five_object_sequences() {
    // three cases at ten seconds each
    run_criterion(
        1,
        "five-object unit and Picard sequences",
        Duration::from_secs(30),
        criterion_01_seq5,
    );
}

#[test]
fn acceptance_02_connecting_map_against_faces() {
    // three cases at five seconds each
    run_criterion(
        2,
        "connecting map agrees with the face route",
        Duration::from_secs(15),
        criterion_02_kappa,
    );
}

#[test]
fn acceptance_03_picard_kernel() {
    run_criterion(
        3,
        "Picard kernel matches cocycle classes",
        Duration::from_secs(60),
        criterion_03_pic_kernel,
    );
}

#[test]
fn acceptance_04_descent_data_bijection() {
    run_criterion(
        4,
        "descent data match comonad coalgebras",
        Duration::from_secs(60),
        criterion_04_brb,
    );
}

#[test]
fn acceptance_05_invertible_submodule_sequences() {
    // three cases at ten seconds each
    run_criterion(
        5,
        "invertible-submodule sequences",
        Duration::from_secs(30),
        criterion_05_invertible,
    );
}

#[test]
fn acceptance_06_dual_sequences() {
    // the flagship case at ten seconds plus the diagonal companion
    run_criterion(
        6,
        "dual automorphism sequences",
        Duration::from_secs(20),
        criterion_06_dual,
    );
}

#[test]
fn acceptance_07_coalgebra_cohomology_vanishing() {
    run_criterion(
        7,
        "coalgebra cohomology vanishing",
        Duration::from_secs(30),
        criterion_07_h1_coalg,
    );
}

#[test]
fn acceptance_08_smith_form_property_suite() {
    run_criterion(
        8,
        "Smith normal form property suite",
        Duration::from_secs(30),
        criterion_08_snf,
    );
}

#[test]
fn acceptance_09_simplicial_identities() {
    // no budget of its own in the matrix; bounded only against runaway cost
    run_criterion(
        9,
        "simplicial identities on built complexes",
        Duration::from_secs(120),
        criterion_09_simplicial,
    );
}

#[test]
fn acceptance_10_coring_endomorphisms_invertible() {
    run_criterion(
        10,
        "coring endomorphisms are automorphisms",
        Duration::from_secs(10),
        criterion_10_end_aut,
    );
}
