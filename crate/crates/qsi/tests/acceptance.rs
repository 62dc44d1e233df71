//! Acceptance gate: one test per headline claim, each running the same
//! sweep the CLI `verify` subcommands expose, at the full pinned ranges.
//! Every assertion is an exact rational equality or factorization — no
//! tolerances anywhere.

use qsi::checks::*;

fn assert_suite(report: &SuiteReport) {
    println!("{}", report.summary());
    for line in report.failures() {
        println!("  FAIL {} - {}", line.cell, line.detail);
    }
    assert!(report.passed(), "{} has failing cells", report.suite);
}

/// The Hilbert–Schmidt commutant projection of each ordered species state
/// equals the closed-form twirl entrywise, for every promise with
/// 2 <= n <= 5 registers and species count <= d <= 3.
#[test]
fn twirl_oracle_equivalence() {
    assert_suite(&check_lemma_oracle(5, 3, VerifyOptions::default()));
}

/// Two-species promises up to n = 8 at d = 2: the symmetric-projector
/// soundness trace is exactly 1 - 1/binomial(n, h) and the closed-form
/// dual witness at even prior certifies PSD with zero gap.
#[test]
fn binary_promise_optimality() {
    assert_suite(&check_perm_test_binary(8, VerifyOptions::default()));
}

/// Zero duality gap on the full prior grid {0, p*/2, p*, (1+p*)/2, 1} for
/// every promise with at least two species, n <= 6, d <= 3.
#[test]
fn duality_gap_sweep() {
    assert_suite(&check_duality_sweep(6, 3, VerifyOptions::default()));
}

/// Subgroup-test soundness formula equals the projector trace exactly for
/// the symmetric and cyclic groups (n <= 8, d = 2) and the binary-tree
/// wreath groups (n = 2, 4, 8).
#[test]
fn subgroup_test_formula() {
    assert_suite(&check_gtest_formula(VerifyOptions::default()));
}

/// Burnside, major-index, and totient routes to the cyclic rates agree
/// exactly for every shape with up to 8 cells, including the pinned
/// single-row and hook values.
#[test]
fn circle_rate_triple_agreement() {
    assert_suite(&check_circle_triple(8));
}

/// Cascade ground truths: accept probability 1/n for a single orthogonal
/// state (n = 2, 4, 8, 16), the worked click count of 5, and the
/// undercount inequality for every word with n <= 16, weight <= 4.
#[test]
fn swap_tree_ground_truths() {
    let opts = VerifyOptions { dim_budget: 1 << 20, ..VerifyOptions::default() };
    assert_suite(&check_ist_values(opts));
}

/// binomial(2^m, h) times the averaged click mass reproduces the
/// recurrence integer for h <= 4, m <= 4, and the recurrence bound never
/// exceeds the exact soundness on 2, 4, 8 registers.
#[test]
fn recurrence_realization() {
    assert_suite(&check_gamma_realization());
}

/// Table structure of the recurrence integers: vanishing h-th forward
/// differences for h <= 5 over m <= 12, the closed forms at h = 2, 3, and
/// the reflection symmetry through depth 4.
#[test]
fn recurrence_polynomial_structure() {
    assert_suite(&check_gamma_polynomial());
}

/// The cascade equals the wreath-group test: placement-averaged accept
/// probability matches the projector trace exactly on 2, 4, 8 registers.
#[test]
fn wreath_identification() {
    assert_suite(&check_wreath_identification(VerifyOptions::default()));
}

/// The achievable error region for the (3,1) promise: mixture
/// measurements land exactly on both boundaries across the alpha grid and
/// reproduce all four vertices.
#[test]
fn error_region_reproduction() {
    assert_suite(&check_region(VerifyOptions::default()));
}

/// Repeated-swap comparison through 10 pairs: both closed forms hold,
/// with equality at one pair and strict separation beyond.
#[test]
fn repeated_swap_comparison() {
    assert_suite(&check_swap_comparison(10));
}
