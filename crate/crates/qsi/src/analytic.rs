//! Closed-form test performance: the optimal prior threshold and case
//! split, subgroup-test soundness from Kostka numbers and trivial-irrep
//! multiplicities, the circle-test identities, the achievable error region,
//! and the repeated-swap comparison table.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::scalar::{rat_u, serialize_opt_rat, serialize_rat};
use crate::partitions::{
    binomial, count_maj_zero, dim_symmetric, kostka, multinomial, partitions_of, Partition,
};
use crate::symgroup::{character, trivial_multiplicity, SubgroupSpec};
use crate::tensor::{group_projector, hs, rho_states, side_checked};
use crate::Rat;

/// The measurement a report refers to.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChosenTest {
    /// Project onto the fully symmetric subspace.
    Permutation,
    /// Always answer `not equal`.
    Trivial,
    /// Project onto the trivial component of a subgroup.
    GTest(SubgroupSpec),
    /// Project onto the complement of the symmetric subspace.
    AntiTest,
    /// Convex mixture (1-alpha) * symmetric + t * complement.
    Mixture {
        #[serde(serialize_with = "serialize_rat")]
        alpha: Rat,
        #[serde(serialize_with = "serialize_rat")]
        t: Rat,
    },
}

/// Exact completeness/soundness/average report for one prior.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TestReport {
    #[serde(serialize_with = "serialize_rat")]
    pub completeness: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub soundness: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub avg_success: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub prior_p: Rat,
    pub chosen_test: ChosenTest,
    /// Set at the threshold prior, where both optimal tests tie; the
    /// permutation test is reported by convention.
    pub tie: bool,
}

fn require_two_species(mu: &Partition) -> Result<()> {
    if mu.part(1) == 0 {
        return Err(Error::Promise(format!(
            "{mu} has a single species; the unequal case needs mu_2 > 0"
        )));
    }
    Ok(())
}

fn require_prior(p: &Rat) -> Result<()> {
    if p < &rat_u(0) || p > &rat_u(1) {
        return Err(Error::Domain(format!("prior {p} outside [0,1]")));
    }
    Ok(())
}

/// Threshold prior 1/(1 + multinomial(mu)) below which answering
/// `not equal` outright beats the permutation test.
pub fn p_star(mu: &Partition) -> Rat {
    rat_u(1) / (rat_u(1) + rat_u(multinomial(mu)))
}

/// The prior grid every sweep uses: both regime interiors, the exact
/// threshold, and both endpoints.
pub fn p_grid(mu: &Partition) -> Vec<Rat> {
    let ps = p_star(mu);
    let half = rat_u(1) / rat_u(2);
    vec![
        rat_u(0),
        ps.clone() * half.clone(),
        ps.clone(),
        (rat_u(1) + ps) * half,
        rat_u(1),
    ]
}

/// Optimal-test report for the promise `mu` at prior `p`: the permutation
/// test at and above the threshold prior, the trivial test below it.
pub fn perm_test_report(mu: &Partition, p: &Rat) -> Result<TestReport> {
    require_two_species(mu)?;
    require_prior(p)?;
    let binom = rat_u(multinomial(mu));
    let star = p_star(mu);
    if *p >= star {
        let soundness = rat_u(1) - rat_u(1) / binom.clone();
        Ok(TestReport {
            completeness: rat_u(1),
            soundness,
            avg_success: rat_u(1) - (rat_u(1) - p.clone()) / binom,
            prior_p: p.clone(),
            chosen_test: ChosenTest::Permutation,
            tie: *p == star,
        })
    } else {
        Ok(TestReport {
            completeness: rat_u(0),
            soundness: rat_u(1),
            avg_success: rat_u(1) - p.clone(),
            prior_p: p.clone(),
            chosen_test: ChosenTest::Trivial,
            tie: false,
        })
    }
}

/// Soundness of the subgroup test on the permuted promise, via the Kostka /
/// trivial-multiplicity formula. Always runs the formula path; the tensor
/// cross-check lives in [`gtest_report`].
pub fn gtest_soundness(
    spec: &SubgroupSpec,
    mu: &Partition,
    d: u32,
    elem_budget: usize,
) -> Result<Rat> {
    require_two_species(mu)?;
    let n = mu.size();
    if mu.len() > d as usize {
        return Err(Error::Domain(format!("{mu} has more than d = {d} species")));
    }
    if spec.ground_size()? != n as usize {
        return Err(Error::SizeMismatch(format!(
            "subgroup {} does not act on {n} points",
            spec.label()
        )));
    }
    let mut overlap = 0u64;
    for lambda in partitions_of(n, d as usize) {
        let k = kostka(&lambda, mu)?;
        if k == 0 {
            continue;
        }
        overlap += k * trivial_multiplicity(spec, &lambda, elem_budget)?;
    }
    Ok(rat_u(1) - rat_u(overlap) / rat_u(multinomial(mu)))
}

/// Subgroup-test report with the optional trace cross-check.
#[derive(Clone, Debug, Serialize)]
pub struct GTestReport {
    pub spec: SubgroupSpec,
    pub mu: Partition,
    pub d: u32,
    /// Formula value; always computed.
    #[serde(serialize_with = "serialize_rat")]
    pub soundness: Rat,
    /// Every subgroup test accepts the all-equal state with certainty.
    #[serde(serialize_with = "serialize_rat")]
    pub completeness: Rat,
    /// 1 - Tr[Pi_G rho-twirled], evaluated when d^n fits the budget.
    #[serde(serialize_with = "serialize_opt_rat")]
    pub trace_soundness: Option<Rat>,
    pub trace_agrees: Option<bool>,
}

/// Computes the formula soundness and, when `d^n` is within the dimension
/// budget, cross-checks it against the projector trace.
pub fn gtest_report(
    spec: &SubgroupSpec,
    mu: &Partition,
    d: u32,
    dim_budget: u128,
    elem_budget: usize,
) -> Result<GTestReport> {
    let soundness = gtest_soundness(spec, mu, d, elem_budget)?;
    let n = mu.size();
    let (trace_soundness, trace_agrees) = if side_checked(n, d, dim_budget).is_ok() {
        let proj = group_projector(spec, n, d, dim_budget, elem_budget)?;
        let states = rho_states(mu, n, d, dim_budget)?;
        let ts = rat_u(1) - hs(&proj, &states.rho_neq_twirled)?;
        let agrees = ts == soundness;
        (Some(ts), Some(agrees))
    } else {
        (None, None)
    };
    Ok(GTestReport {
        spec: spec.clone(),
        mu: mu.clone(),
        d,
        soundness,
        completeness: rat_u(1),
        trace_soundness,
        trace_agrees,
    })
}

/// The three independent ways of computing the cyclic-group rate
/// r^{C_n}_lambda / d_lambda.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircleRoute {
    /// Averaged character over the expanded cyclic group.
    Burnside,
    /// Standard tableaux with major index divisible by n.
    Maj,
    /// Divisor sum with Euler's totient weighting characters at
    /// rectangular cycle types.
    Totient,
}

/// Euler's totient.
pub fn euler_phi(k: u32) -> u32 {
    (1..=k).filter(|i| gcd(*i, k) == 1).count() as u32
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Trivial-component rate of the cyclic group inside the irrep `lambda`,
/// by the requested route. All routes agree exactly.
pub fn circle_rate(lambda: &Partition, n: u32, route: CircleRoute) -> Result<Rat> {
    if lambda.size() != n {
        return Err(Error::SizeMismatch(format!("|{lambda}| = {} != {n}", lambda.size())));
    }
    let dim = rat_u(dim_symmetric(lambda));
    match route {
        CircleRoute::Burnside => {
            let r = trivial_multiplicity(&SubgroupSpec::Cyclic(n), lambda, n as usize + 1)?;
            Ok(rat_u(r) / dim)
        }
        CircleRoute::Maj => Ok(rat_u(count_maj_zero(lambda, n)?) / dim),
        CircleRoute::Totient => {
            let inv_n = rat_u(1) / rat_u(n as u64);
            let mut rate = inv_n.clone();
            for ell in 2..=n {
                if !n.is_multiple_of(ell) {
                    continue;
                }
                let class = Partition::new(vec![ell; (n / ell) as usize])?;
                let chi = character(lambda, &class)?;
                if chi == 0 {
                    continue;
                }
                let chi_rat = if chi >= 0 {
                    rat_u(chi as u64)
                } else {
                    -rat_u((-chi) as u64)
                };
                rate += inv_n.clone() * (chi_rat / dim.clone()) * rat_u(euler_phi(ell) as u64);
            }
            Ok(rate)
        }
    }
}

/// One sample of the achievable (type I, type II) error region.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionPoint {
    #[serde(serialize_with = "serialize_rat")]
    pub alpha: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub beta: Rat,
}

/// Both boundary values of the region at a completeness error `alpha`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionBoundary {
    #[serde(serialize_with = "serialize_rat")]
    pub alpha: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub beta_low: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub beta_high: Rat,
}

/// The achievable region is the parallelogram
/// (1-alpha)/binom <= beta <= 1 - alpha/binom.
pub fn region_boundary(mu: &Partition, alpha: &Rat) -> Result<RegionBoundary> {
    require_two_species(mu)?;
    if alpha < &rat_u(0) || alpha > &rat_u(1) {
        return Err(Error::Domain(format!("alpha {alpha} outside [0,1]")));
    }
    let binom = rat_u(multinomial(mu));
    Ok(RegionBoundary {
        alpha: alpha.clone(),
        beta_low: (rat_u(1) - alpha.clone()) / binom.clone(),
        beta_high: rat_u(1) - alpha.clone() / binom,
    })
}

/// Mixture weight `t` for which (1-alpha) * symmetric + t * complement
/// achieves the requested `beta0`; errors when `beta0` leaves the region.
pub fn region_mixture_t(mu: &Partition, alpha: &Rat, beta0: &Rat) -> Result<Rat> {
    let bounds = region_boundary(mu, alpha)?;
    if beta0 < &bounds.beta_low || beta0 > &bounds.beta_high {
        return Err(Error::Infeasible(format!(
            "beta {beta0} outside [{}, {}] at alpha {alpha}",
            bounds.beta_low, bounds.beta_high
        )));
    }
    let binom = rat_u(multinomial(mu));
    let t = (beta0.clone() - bounds.beta_low) / (rat_u(1) - rat_u(1) / binom);
    Ok(t)
}

/// Average success probabilities of n independent pairwise swap tests
/// versus the joint optimal test on all 2n registers, at an even prior.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SwapComparison {
    pub pairs: u32,
    #[serde(serialize_with = "serialize_rat")]
    pub p_swap: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub p_perm: Rat,
}

/// p_swap = 1 - 2^-(n+1) and p_perm = 1 - 1/(2 binomial(2n, n)); the joint
/// test wins strictly for n >= 2 and ties at n = 1.
pub fn swap_vs_perm(pairs_n: u32) -> Result<SwapComparison> {
    if pairs_n < 1 {
        return Err(Error::Domain("need at least one pair".into()));
    }
    let two_pow = rat_u(2u64.pow(pairs_n + 1));
    let binom = rat_u(binomial(2 * pairs_n as u64, pairs_n as u64));
    Ok(SwapComparison {
        pairs: pairs_n,
        p_swap: rat_u(1) - rat_u(1) / two_pow,
        p_perm: rat_u(1) - rat_u(1) / (rat_u(2) * binom),
    })
}
