//! Verification sweeps: every quantitative claim the library makes, run
//! cell by cell with exact pass/fail reporting.
//!
//! These are the entry points behind the CLI `verify` subcommands and the
//! acceptance test suite, so CI and humans exercise the same code path.
//! A cell that errors (budget, promise, internal inconsistency) reports a
//! failing line rather than aborting the sweep.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{
    circle_rate, gtest_report, p_grid, perm_test_report, region_boundary, region_mixture_t,
    swap_vs_perm, CircleRoute,
};
use crate::error::Result;
use crate::exact::scalar::{format_rat, rat, rat_u};
use crate::ist::{
    click_lower_bound, gamma, gamma_symmetric_checked, ist_accept_prob, ist_soundness_bound,
    mean_accept_prob, mean_click_mass, Arrangement, GammaTable,
};
use crate::partitions::{binomial, multinomial, partitions_of, Partition};
use crate::symgroup::{SubgroupSpec, DEFAULT_ELEMENT_BUDGET};
use crate::tensor::{
    basis_word_projector, commutant_projection, group_projector, hs, mu_word, rho_states_with,
    side_checked, Isotypics, DEFAULT_DIM_BUDGET,
};
use crate::sdp::SdpInstance;
use crate::{Int, Rat};

/// One verified cell.
#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub cell: String,
    pub pass: bool,
    pub detail: String,
}

/// A named sweep of cells.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    fn new(suite: impl Into<String>) -> Self {
        SuiteReport { suite: suite.into(), lines: Vec::new() }
    }

    fn record(&mut self, cell: impl Into<String>, outcome: Result<(bool, String)>) {
        let cell = cell.into();
        match outcome {
            Ok((pass, detail)) => self.lines.push(CheckLine { cell, pass, detail }),
            Err(e) => self.lines.push(CheckLine { cell, pass: false, detail: e.to_string() }),
        }
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.pass)
    }

    pub fn summary(&self) -> String {
        let total = self.lines.len();
        let passed = self.lines.iter().filter(|l| l.pass).count();
        format!("{}: {passed}/{total} cells pass", self.suite)
    }
}

/// Budgets shared by the sweeps.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub dim_budget: u128,
    pub elem_budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { dim_budget: DEFAULT_DIM_BUDGET, elem_budget: DEFAULT_ELEMENT_BUDGET }
    }
}

fn eq_detail(lhs: &Rat, rhs: &Rat) -> (bool, String) {
    let pass = lhs == rhs;
    if pass {
        (true, format_rat(lhs))
    } else {
        (false, format!("{} != {}", format_rat(lhs), format_rat(rhs)))
    }
}

/// Haar-twirl oracle equivalence: the Hilbert–Schmidt commutant projection
/// of each ordered species state reproduces the closed-form construction
/// entrywise, for every promise on 2..=n_max registers and local dimension
/// up to d_max.
pub fn check_lemma_oracle(n_max: u32, d_max: u32, opts: VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("lemma-oracle");
    let mut cells = Vec::new();
    for n in 2..=n_max {
        for d in 1..=d_max {
            if side_checked(n, d, opts.dim_budget).is_err() {
                continue;
            }
            for mu in partitions_of(n, d as usize) {
                cells.push((n, d, mu));
            }
        }
    }
    let lines: Vec<(String, Result<(bool, String)>)> = cells
        .into_par_iter()
        .map(|(n, d, mu)| {
            let cell = format!("n={n} d={d} mu={mu}");
            let outcome = (|| {
                let word = mu_word(&mu);
                let x = basis_word_projector(&word, d, opts.dim_budget)?;
                let oracle = commutant_projection(&x)?;
                let iso = Isotypics::build(n, d, opts.dim_budget)?;
                let states = rho_states_with(&iso, &mu)?;
                let pass = oracle.mat == states.rho_neq.mat;
                Ok((pass, if pass { "entrywise equal".into() } else { "mismatch".into() }))
            })();
            (cell, outcome)
        })
        .collect();
    for (cell, outcome) in lines {
        report.record(cell, outcome);
    }
    report
}

/// Two-part promise at even prior: the symmetric-projector soundness trace
/// equals 1 - 1/binomial(n, h), and the closed-form dual witness certifies
/// PSD with zero gap.
pub fn check_perm_test_binary(n_max: u32, opts: VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("perm-test-binary");
    let d = 2;
    for n in 2..=n_max {
        if side_checked(n, d, opts.dim_budget).is_err() {
            continue;
        }
        let iso = match Isotypics::build(n, d, opts.dim_budget) {
            Ok(iso) => iso,
            Err(e) => {
                report.record(format!("n={n}"), Err(e));
                continue;
            }
        };
        for h in 1..=n / 2 {
            let mu = Partition::new(vec![n - h, h]).unwrap();
            let cell = format!("n={n} h={h}");
            let outcome = (|| {
                let inst = SdpInstance::with_isotypics(&iso, &mu)?;
                let leak = hs(
                    &crate::tensor::TensorOp::new(n, d, iso.symmetric().clone())?,
                    &inst.states.rho_neq,
                )?;
                let soundness = rat_u(1) - leak;
                let expected = rat_u(1) - rat_u(1) / rat_u(binomial(n as u64, h as u64));
                if soundness != expected {
                    return Ok((false, format!("soundness {}", format_rat(&soundness))));
                }
                let witness = inst.dual_witness(&rat(1, 2))?;
                let cert = inst.certify(&witness)?;
                let pass = cert.feasible && cert.gap.is_zero();
                Ok((
                    pass,
                    format!(
                        "soundness {}, gap {}",
                        format_rat(&soundness),
                        format_rat(&cert.gap)
                    ),
                ))
            })();
            report.record(cell, outcome);
        }
    }
    report
}

/// Zero duality gap across the full prior grid for every promise with at
/// least two species, n <= n_max, d <= d_max, within the dimension budget.
pub fn check_duality_sweep(n_max: u32, d_max: u32, opts: VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("duality-sweep");
    for n in 2..=n_max {
        for d in 2..=d_max {
            if side_checked(n, d, opts.dim_budget).is_err() {
                continue;
            }
            let iso = match Isotypics::build(n, d, opts.dim_budget) {
                Ok(iso) => iso,
                Err(e) => {
                    report.record(format!("n={n} d={d}"), Err(e));
                    continue;
                }
            };
            let mus: Vec<Partition> = partitions_of(n, d as usize)
                .into_iter()
                .filter(|mu| mu.part(1) > 0)
                .collect();
            let lines: Vec<(String, Result<(bool, String)>)> = mus
                .par_iter()
                .flat_map(|mu| {
                    let inst = SdpInstance::with_isotypics(&iso, mu);
                    p_grid(mu)
                        .into_par_iter()
                        .map(|p| {
                            let cell = format!("n={n} d={d} mu={mu} p={}", format_rat(&p));
                            let outcome = (|| {
                                let inst = match &inst {
                                    Ok(inst) => inst,
                                    Err(e) => return Err(e.clone()),
                                };
                                let witness = inst.dual_witness(&p)?;
                                let cert = inst.certify(&witness)?;
                                // the analytic report must equal the dual value
                                let analytic = perm_test_report(mu, &p)?;
                                if analytic.avg_success != cert.dual_value {
                                    return Ok((
                                        false,
                                        format!(
                                            "report {} != dual {}",
                                            format_rat(&analytic.avg_success),
                                            format_rat(&cert.dual_value)
                                        ),
                                    ));
                                }
                                let pass = cert.feasible && cert.gap.is_zero();
                                Ok((pass, format!("gap {}", format_rat(&cert.gap))))
                            })();
                            (cell, outcome)
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            for (cell, outcome) in lines {
                report.record(cell, outcome);
            }
        }
    }
    report
}

/// Subgroup-test soundness formula against the projector trace, for the
/// symmetric and cyclic groups on up to 8 registers and the binary-tree
/// wreath groups on 2, 4, 8 registers (all at d = 2). Also checks perfect
/// completeness and that no subgroup test beats the full permutation test.
pub fn check_gtest_formula(opts: VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("gtest-formula");
    let d = 2;
    let mut cells: Vec<(SubgroupSpec, Partition)> = Vec::new();
    for n in 2..=8u32 {
        for h in 1..=n / 2 {
            let mu = Partition::new(vec![n - h, h]).unwrap();
            cells.push((SubgroupSpec::Symmetric(n), mu.clone()));
            cells.push((SubgroupSpec::Cyclic(n), mu.clone()));
            if n.is_power_of_two() {
                cells.push((SubgroupSpec::IteratedWreath2(n.trailing_zeros()), mu));
            }
        }
    }
    let lines: Vec<(String, Result<(bool, String)>)> = cells
        .into_par_iter()
        .map(|(spec, mu)| {
            let cell = format!("G={} mu={mu}", spec.label());
            let outcome = (|| {
                let n = mu.size();
                let r = gtest_report(&spec, &mu, d, opts.dim_budget, opts.elem_budget)?;
                let Some(trace) = r.trace_soundness.clone() else {
                    return Ok((false, "trace path skipped (budget)".into()));
                };
                if trace != r.soundness {
                    return Ok((
                        false,
                        format!(
                            "formula {} != trace {}",
                            format_rat(&r.soundness),
                            format_rat(&trace)
                        ),
                    ));
                }
                // perfect completeness, exactly
                let proj = group_projector(&spec, n, d, opts.dim_budget, opts.elem_budget)?;
                let iso = Isotypics::build(n, d, opts.dim_budget)?;
                let states = rho_states_with(&iso, &mu)?;
                if hs(&proj, &states.rho_eq)? != rat_u(1) {
                    return Ok((false, "completeness trace differs from 1".into()));
                }
                // never better than the full symmetric group
                let full = rat_u(1) - rat_u(1) / rat_u(multinomial(&mu));
                let pass = r.soundness <= full;
                Ok((pass, format!("soundness {}", format_rat(&r.soundness))))
            })();
            (cell, outcome)
        })
        .collect();
    for (cell, outcome) in lines {
        report.record(cell, outcome);
    }
    report
}

/// Cyclic-group rates: the Burnside average, the major-index tableau count,
/// and the totient divisor sum agree exactly for every shape of up to
/// n_max cells, including the two pinned values at the single-row and
/// hook shapes.
pub fn check_circle_triple(n_max: u32) -> SuiteReport {
    let mut report = SuiteReport::new("circle-triple");
    for n in 1..=n_max {
        for lam in partitions_of(n, n as usize) {
            let cell = format!("n={n} lambda={lam}");
            let outcome = (|| {
                let b = circle_rate(&lam, n, CircleRoute::Burnside)?;
                let m = circle_rate(&lam, n, CircleRoute::Maj)?;
                let t = circle_rate(&lam, n, CircleRoute::Totient)?;
                if b != m || b != t {
                    return Ok((
                        false,
                        format!(
                            "burnside {} maj {} totient {}",
                            format_rat(&b),
                            format_rat(&m),
                            format_rat(&t)
                        ),
                    ));
                }
                // pinned values
                if lam == Partition::single_row(n) && b != rat_u(1) {
                    return Ok((false, "single-row rate differs from 1".into()));
                }
                if n >= 2 && lam == Partition::new(vec![n - 1, 1]).unwrap() && !b.is_zero() {
                    return Ok((false, "hook rate differs from 0".into()));
                }
                Ok((true, format_rat(&b)))
            })();
            report.record(cell, outcome);
        }
    }
    report
}

/// Cascade ground truths: single-orthogonal accept probability 1/n, the
/// worked click-count example, and the undercount inequality for every
/// two-species word with up to 16 registers and weight up to 4.
pub fn check_ist_values(opts: VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("ist-values");
    let d = 2;
    for n in [2u32, 4, 8, 16] {
        if side_checked(n, d, opts.dim_budget).is_err() {
            continue;
        }
        let cell = format!("single-orthogonal n={n}");
        let outcome = (|| {
            let mut word = vec![0u32; n as usize];
            word[0] = 1;
            let got = ist_accept_prob(&Arrangement::new(word)?, d, opts.dim_budget)?;
            Ok(eq_detail(&got, &(rat_u(1) / rat_u(n as u64))))
        })();
        report.record(cell, outcome);
    }

    let outcome = (|| {
        let clicks = click_lower_bound(&"1,0,0,0,1,0,1,1".parse::<Arrangement>()?)?;
        Ok((clicks == 5, format!("clicks {clicks}")))
    })();
    report.record("worked-example 1,0,0,0,1,0,1,1", outcome);

    for n in [2u32, 4, 8, 16] {
        if side_checked(n, d, opts.dim_budget).is_err() {
            continue;
        }
        for h in 1..=n.min(4) {
            let cell = format!("undercount n={n} h={h}");
            let words = weight_words(n as usize, h as usize);
            let violations: Vec<String> = words
                .par_iter()
                .filter_map(|word| {
                    let a = Arrangement::new(word.clone()).ok()?;
                    let accept = ist_accept_prob(&a, d, opts.dim_budget).ok()?;
                    let clicks = click_lower_bound(&a).ok()?;
                    let cap = rat(1, 2).pow(clicks as i32);
                    (accept > cap).then(|| a.to_string())
                })
                .collect();
            let pass = violations.is_empty();
            let detail = if pass {
                format!("{} words", words.len())
            } else {
                format!("violated at {}", violations.join("; "))
            };
            report.record(cell, Ok((pass, detail)));
        }
    }
    report
}

fn weight_words(n: usize, h: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut positions = Vec::with_capacity(h);
    fn rec(start: usize, n: usize, h: usize, pos: &mut Vec<usize>, out: &mut Vec<Vec<u32>>) {
        if pos.len() == h {
            let mut word = vec![0u32; n];
            for &p in pos.iter() {
                word[p] = 1;
            }
            out.push(word);
            return;
        }
        for i in start..n {
            pos.push(i);
            rec(i + 1, n, h, pos, out);
            pos.pop();
        }
    }
    rec(0, n, h, &mut positions, &mut out);
    out
}

/// The recurrence realization: binomial(2^m, h) times the averaged halving
/// mass equals gamma(h, m) for h <= 4, m <= 4; and the recurrence bound
/// never exceeds the exact soundness on 2, 4, 8 registers.
pub fn check_gamma_realization() -> SuiteReport {
    let mut report = SuiteReport::new("gamma-realization");
    let cells: Vec<(u32, u32)> = (0..=4u32)
        .flat_map(|m| (0..=(1u32 << m).min(4)).map(move |h| (h, m)))
        .collect();
    let lines: Vec<(String, Result<(bool, String)>)> = cells
        .into_par_iter()
        .map(|(h, m)| {
            let n = 1u32 << m;
            let cell = format!("realization h={h} m={m}");
            let outcome = (|| {
                let mean = mean_click_mass(n, h)?;
                let lhs = rat_u(binomial(n as u64, h as u64)) * mean;
                let rhs = Rat::from_integer(gamma(h as u64, m as u64));
                Ok(eq_detail(&lhs, &rhs))
            })();
            (cell, outcome)
        })
        .collect();
    for (cell, outcome) in lines {
        report.record(cell, outcome);
    }

    for n in [2u32, 4, 8] {
        for h in 1..=n / 2 {
            let cell = format!("bound-vs-exact n={n} h={h}");
            let outcome = (|| {
                let exact = rat_u(1) - mean_accept_prob(n, h)?;
                let bound = ist_soundness_bound(n, h)?;
                let pass = bound <= exact;
                Ok((
                    pass,
                    format!("bound {} exact {}", format_rat(&bound), format_rat(&exact)),
                ))
            })();
            report.record(cell, outcome);
        }
    }
    report
}

/// Polynomial structure of the recurrence table: h-th forward differences
/// vanish for h <= 5 over m <= 12, the closed forms for h = 2, 3 hold, and
/// the reflection symmetry holds up to depth 4.
pub fn check_gamma_polynomial() -> SuiteReport {
    let mut report = SuiteReport::new("gamma-polynomial");
    let mut table = GammaTable::new();
    for h in 1..=5u64 {
        let cell = format!("forward-differences h={h}");
        let mut values: Vec<Int> = (0..=12u64).map(|m| table.get(h, m)).collect();
        for _ in 0..h {
            values = values.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
        }
        let pass = values.iter().all(Zero::is_zero);
        report.record(cell, Ok((pass, format!("window 0..=12, degree < {h}"))));
    }
    let closed2 = (0..=12u64).all(|m| table.get(2, m) == Int::from(m));
    report.record("closed-form h=2", Ok((closed2, "gamma(2,m) = m".into())));
    let closed3 = (0..=12u64).all(|m| table.get(3, m) == Int::from(m * m.saturating_sub(1) / 2));
    report.record("closed-form h=3", Ok((closed3, "gamma(3,m) = m(m-1)/2".into())));
    for m in 0..=4u64 {
        let cell = format!("symmetry m={m}");
        let outcome = (|| {
            for h in 0..=(1u64 << m) {
                gamma_symmetric_checked(h, m)?;
            }
            Ok((true, format!("h = 0..={}", 1u64 << m)))
        })();
        report.record(cell, outcome);
    }
    report
}

/// The cascade is the wreath-group test: the placement-averaged accept
/// probability equals the trace of the wreath projector against the
/// register-averaged state, on 2, 4, 8 registers. Discrepancies are
/// reported with both exact values.
pub fn check_wreath_identification(opts: VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("wreath-identification");
    for m in 1..=3u32 {
        let n = 1u32 << m;
        let proj = match group_projector(
            &SubgroupSpec::IteratedWreath2(m),
            n,
            2,
            opts.dim_budget,
            opts.elem_budget,
        ) {
            Ok(p) => p,
            Err(e) => {
                report.record(format!("n={n}"), Err(e));
                continue;
            }
        };
        let iso = match Isotypics::build(n, 2, opts.dim_budget) {
            Ok(iso) => iso,
            Err(e) => {
                report.record(format!("n={n}"), Err(e));
                continue;
            }
        };
        for h in 1..=n / 2 {
            let cell = format!("n={n} h={h}");
            let outcome = (|| {
                let mu = Partition::new(vec![n - h, h])?;
                let states = rho_states_with(&iso, &mu)?;
                let trace = hs(&proj, &states.rho_neq_twirled)?;
                let mean = mean_accept_prob(n, h)?;
                if mean != trace {
                    return Ok((
                        false,
                        format!(
                            "mean accept {} but projector trace {}",
                            format_rat(&mean),
                            format_rat(&trace)
                        ),
                    ));
                }
                Ok((true, format_rat(&mean)))
            })();
            report.record(cell, outcome);
        }
    }
    report
}

/// Achievable-region reproduction for the four-register promise (3,1):
/// the mixture measurement lands exactly on both boundaries across the
/// alpha grid, the four vertices come out exactly, and the achievability
/// weight reproduces interior points.
pub fn check_region(opts: VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("region");
    let mu = Partition::new(vec![3, 1]).unwrap();
    let inst = match SdpInstance::new(&mu, 2, opts.dim_budget) {
        Ok(i) => i,
        Err(e) => {
            report.record("setup", Err(e));
            return report;
        }
    };
    let alphas = [rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)];
    for alpha in &alphas {
        for (t, which) in [(rat(0, 1), "low"), (rat(1, 1), "high")] {
            let cell = format!("alpha={} boundary={which}", format_rat(alpha));
            let outcome = (|| {
                let bounds = region_boundary(&mu, alpha)?;
                let expected = if which == "low" { bounds.beta_low } else { bounds.beta_high };
                let accept = inst.mixture_measurement(alpha, &t);
                let got = inst.measurement_errors(&accept)?;
                let pass = got.alpha == *alpha && got.beta == expected;
                Ok((pass, format!("({}, {})", format_rat(&got.alpha), format_rat(&got.beta))))
            })();
            report.record(cell, outcome);
        }
        // interior achievability through the exact mixture weight
        let cell = format!("alpha={} midpoint", format_rat(alpha));
        let outcome = (|| {
            let bounds = region_boundary(&mu, alpha)?;
            let beta0 = (bounds.beta_low.clone() + bounds.beta_high.clone()) / rat_u(2);
            let t = region_mixture_t(&mu, alpha, &beta0)?;
            let accept = inst.mixture_measurement(alpha, &t);
            let got = inst.measurement_errors(&accept)?;
            let pass = got.alpha == *alpha && got.beta == beta0;
            Ok((pass, format!("beta {}", format_rat(&got.beta))))
        })();
        report.record(cell, outcome);
    }
    // the four vertices
    let vertices = [
        (rat(0, 1), rat(0, 1), (rat(0, 1), rat(1, 4)), "accept-symmetric"),
        (rat(1, 1), rat(0, 1), (rat(1, 1), rat(0, 1)), "never-accept"),
        (rat(0, 1), rat(1, 1), (rat(0, 1), rat(1, 1)), "always-accept"),
        (rat(1, 1), rat(1, 1), (rat(1, 1), rat(3, 4)), "anti-test"),
    ];
    for (alpha, t, expected, name) in vertices {
        let cell = format!("vertex {name}");
        let outcome = (|| {
            let accept = inst.mixture_measurement(&alpha, &t);
            let got = inst.measurement_errors(&accept)?;
            let pass = (got.alpha.clone(), got.beta.clone()) == expected;
            Ok((pass, format!("({}, {})", format_rat(&got.alpha), format_rat(&got.beta))))
        })();
        report.record(cell, outcome);
    }
    report
}

/// Repeated-swap comparison table: both closed forms reproduced for up to
/// n_max pairs, with strict separation from two pairs on and equality at
/// one pair.
pub fn check_swap_comparison(n_max: u32) -> SuiteReport {
    let mut report = SuiteReport::new("swap-comparison");
    for n in 1..=n_max {
        let cell = format!("pairs={n}");
        let outcome = (|| {
            let c = swap_vs_perm(n)?;
            // recompute both closed forms independently
            let mut pow = rat_u(1);
            for _ in 0..=n {
                pow *= rat_u(2);
            }
            let swap_expected = rat_u(1) - rat_u(1) / pow;
            let perm_expected =
                rat_u(1) - rat_u(1) / (rat_u(2) * rat_u(binomial(2 * n as u64, n as u64)));
            if c.p_swap != swap_expected || c.p_perm != perm_expected {
                return Ok((false, "closed forms not reproduced".into()));
            }
            let pass = if n == 1 { c.p_perm == c.p_swap } else { c.p_perm > c.p_swap };
            Ok((
                pass,
                format!("swap {} perm {}", format_rat(&c.p_swap), format_rat(&c.p_perm)),
            ))
        })();
        report.record(cell, outcome);
    }
    report
}

/// The named verify suites exposed by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Lemma1,
    Sdp,
    Circle,
    Wreath,
    Gamma,
    All,
}

/// Runs a named suite with optional sweep-size overrides.
pub fn run_suite(
    suite: Suite,
    n_max: Option<u32>,
    d_max: Option<u32>,
    opts: VerifyOptions,
) -> Vec<SuiteReport> {
    match suite {
        Suite::Lemma1 => vec![check_lemma_oracle(n_max.unwrap_or(5), d_max.unwrap_or(3), opts)],
        Suite::Sdp => vec![
            check_perm_test_binary(n_max.unwrap_or(8), opts),
            check_duality_sweep(n_max.unwrap_or(6), d_max.unwrap_or(3), opts),
            check_region(opts),
            check_swap_comparison(n_max.unwrap_or(10)),
        ],
        Suite::Circle => vec![check_circle_triple(n_max.unwrap_or(8))],
        Suite::Wreath => vec![check_gtest_formula(opts), check_wreath_identification(opts)],
        Suite::Gamma => vec![
            check_ist_values(opts),
            check_gamma_realization(),
            check_gamma_polynomial(),
        ],
        Suite::All => {
            let mut all = run_suite(Suite::Lemma1, n_max, d_max, opts);
            all.extend(run_suite(Suite::Sdp, n_max, d_max, opts));
            all.extend(run_suite(Suite::Circle, n_max, d_max, opts));
            all.extend(run_suite(Suite::Wreath, n_max, d_max, opts));
            all.extend(run_suite(Suite::Gamma, n_max, d_max, opts));
            all
        }
    }
}
