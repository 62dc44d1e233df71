//! The iterated swap tree: a binary cascade of pairwise swap tests on
//! 2^m registers, accepting only when every test reports symmetric.
//!
//! Three quantities are computed exactly: the accept probability of a
//! concrete arrangement (state-vector simulation of the all-accept
//! branch), a per-arrangement lower bound on detection opportunities
//! ("clicks"), and the recurrence integer gamma(h, m) whose ratio against
//! binomial(n, h) upper-bounds the averaged miss probability.

use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::scalar::{rat_int, rat_u};
use crate::partitions::{binomial_big, Partition};
use crate::tensor::side_checked;
use crate::{Int, Rat};

/// A length-n word of state labels: 0 is the majority species, positive
/// labels are pairwise orthogonal others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    word: Vec<u32>,
}

impl Arrangement {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Domain("empty arrangement".into()));
        }
        Ok(Arrangement { word })
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// Number of registers holding a non-majority state.
    pub fn weight(&self) -> u32 {
        self.word.iter().filter(|&&c| c != 0).count() as u32
    }

    /// Tree depth; errors unless n is a power of two.
    pub fn levels(&self) -> Result<u32> {
        let n = self.n();
        if !n.is_power_of_two() {
            return Err(Error::Domain(format!("length {n} is not a power of two")));
        }
        Ok(n.trailing_zeros())
    }

    fn is_two_species(&self) -> bool {
        self.word.iter().all(|&c| c <= 1)
    }
}

impl FromStr for Arrangement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad label {t:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        Arrangement::new(word)
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.word.iter().map(u32::to_string).collect();
        write!(f, "{}", labels.join(","))
    }
}

/// Lower-bounds the number of swap tests in the tree whose two ports are
/// certainly orthogonal: per layer, a pair counts when its ports hold
/// different numbers of orthogonal states; port counts then merge upward.
pub fn click_lower_bound(a: &Arrangement) -> Result<u32> {
    a.levels()?;
    if !a.is_two_species() {
        return Err(Error::Domain("click counting expects a two-species word".into()));
    }
    let mut counts: Vec<u32> = a.word.iter().map(|&c| u32::from(c != 0)).collect();
    let mut clicks = 0;
    while counts.len() > 1 {
        let mut next = Vec::with_capacity(counts.len() / 2);
        for pair in counts.chunks(2) {
            if pair[0] != pair[1] {
                clicks += 1;
            }
            next.push(pair[0] + pair[1]);
        }
        counts = next;
    }
    Ok(clicks)
}

/// Exact probability that the cascade accepts the basis-product input of
/// `a`: each swap test applies (I + S)/2 on its block pair, rejection is
/// absorbing, so the accept probability is the squared norm of the fully
/// projected state.
pub fn ist_accept_prob(a: &Arrangement, d: u32, budget: u128) -> Result<Rat> {
    let m = a.levels()?;
    let n = a.n() as u32;
    if a.word.iter().any(|&c| c >= d) {
        return Err(Error::Domain(format!("word labels must be below d = {d}")));
    }
    side_checked(n, d, budget)?;
    Ok(accept_probability(&a.word, m))
}

fn accept_probability(word: &[u32], levels: u32) -> Rat {
    let n = word.len();
    let half = rat_u(1) / rat_u(2);
    let mut state: HashMap<Vec<u32>, Rat> = HashMap::new();
    state.insert(word.to_vec(), rat_u(1));
    for level in 0..levels {
        let bs = 1usize << level;
        for b in 0..n / (2 * bs) {
            let lo = 2 * b * bs;
            let mut next: HashMap<Vec<u32>, Rat> = HashMap::with_capacity(state.len() * 2);
            for (w, c) in &state {
                let contribution = c.clone() * half.clone();
                let mut swapped = w.clone();
                for i in 0..bs {
                    swapped.swap(lo + i, lo + bs + i);
                }
                *next.entry(w.clone()).or_insert_with(|| rat_u(0)) += contribution.clone();
                *next.entry(swapped).or_insert_with(|| rat_u(0)) += contribution;
            }
            state = next;
        }
    }
    state.values().map(|c| c.clone() * c.clone()).sum()
}

/// Average accept probability over all weight-h placements on n = 2^m
/// registers. The accept probability depends only on the placement word,
/// so averaging over placements equals averaging over all relabelings.
pub fn mean_accept_prob(n: u32, h: u32) -> Result<Rat> {
    mean_over_weight_words(n, h, accept_probability)
}

/// Average of (1/2)^clicks over all weight-h placements: the quantity the
/// gamma recurrence tracks exactly, an upper bound on [`mean_accept_prob`]
/// since the click count undercounts detection opportunities.
pub fn mean_click_mass(n: u32, h: u32) -> Result<Rat> {
    mean_over_weight_words(n, h, |word, _| {
        let a = Arrangement { word: word.to_vec() };
        let clicks = click_lower_bound(&a).expect("two-species power-of-two word");
        let half = rat_u(1) / rat_u(2);
        (0..clicks).map(|_| half.clone()).product()
    })
}

fn mean_over_weight_words(n: u32, h: u32, f: impl Fn(&[u32], u32) -> Rat) -> Result<Rat> {
    if !n.is_power_of_two() {
        return Err(Error::Domain(format!("n = {n} is not a power of two")));
    }
    if h > n {
        return Err(Error::Domain(format!("weight {h} exceeds {n} registers")));
    }
    let m = n.trailing_zeros();
    let mut total = rat_u(0);
    let mut count = 0u64;
    for positions in combinations(n as usize, h as usize) {
        let mut word = vec![0u32; n as usize];
        for p in positions {
            word[p] = 1;
        }
        total += f(&word, m);
        count += 1;
    }
    Ok(total / rat_u(count))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Exact soundness of the cascade on the two-species promise with h
/// orthogonal states: one minus the placement-averaged accept probability.
pub fn ist_soundness_exact(n: u32, h: u32, d: u32, budget: u128) -> Result<Rat> {
    if !n.is_power_of_two() {
        return Err(Error::Domain(format!("n = {n} is not a power of two")));
    }
    if h == 0 || h > n / 2 {
        return Err(Error::Promise(format!("weight h = {h} outside 1..={}", n / 2)));
    }
    if d < 2 {
        return Err(Error::Domain("two species need d >= 2".into()));
    }
    side_checked(n, d, budget)?;
    Ok(rat_u(1) - mean_accept_prob(n, h)?)
}

/// Memoized table of the recurrence integer gamma(h, m):
/// gamma(0, m) = gamma(1, m) = 1, gamma(h, 0) = 0 for h >= 2, and
/// gamma(h, m) = sum_{k=0}^{floor(h/2)} gamma(k, m-1) gamma(h-k, m-1).
#[derive(Default)]
pub struct GammaTable {
    memo: HashMap<(u64, u64), Int>,
}

impl GammaTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, h: u64, m: u64) -> Int {
        if h <= 1 {
            return Int::one();
        }
        if m == 0 {
            return Int::zero();
        }
        if let Some(v) = self.memo.get(&(h, m)) {
            return v.clone();
        }
        let mut total = Int::zero();
        for k in 0..=h / 2 {
            total += self.get(k, m - 1) * self.get(h - k, m - 1);
        }
        // vanishing below the packing depth: fewer than h registers
        if m < 63 && (1u64 << m) < h {
            assert!(total.is_zero(), "gamma({h},{m}) must vanish when 2^m < h");
        }
        self.memo.insert((h, m), total.clone());
        total
    }
}

/// The recurrence integer gamma(h, m).
pub fn gamma(h: u64, m: u64) -> Int {
    GammaTable::new().get(h, m)
}

/// gamma(h, m) together with the reflection check
/// gamma(h, m) = gamma(2^m - h, m); requires h <= 2^m.
pub fn gamma_symmetric_checked(h: u64, m: u64) -> Result<Int> {
    if m >= 63 || h > (1u64 << m) {
        return Err(Error::Domain(format!("h = {h} exceeds 2^{m} registers")));
    }
    let mut table = GammaTable::new();
    let value = table.get(h, m);
    let mirrored = table.get((1u64 << m) - h, m);
    if value != mirrored {
        return Err(Error::Inconsistency(format!(
            "gamma({h},{m}) = {value} but gamma({},{m}) = {mirrored}",
            (1u64 << m) - h
        )));
    }
    Ok(value)
}

/// Recurrence lower bound on the cascade soundness:
/// 1 - gamma(h, log2 n) / binomial(n, h).
pub fn ist_soundness_bound(n: u32, h: u32) -> Result<Rat> {
    if !n.is_power_of_two() {
        return Err(Error::Domain(format!("n = {n} is not a power of two")));
    }
    if h == 0 || h > n / 2 {
        return Err(Error::Promise(format!("weight h = {h} outside 1..={}", n / 2)));
    }
    let m = n.trailing_zeros() as u64;
    let g = gamma(h as u64, m);
    let binom = binomial_big(n as u64, h as u64);
    Ok(rat_u(1) - rat_int(g) / rat_int(binom))
}

/// Soundness bound for a general promise: merge the smallest parts into an
/// orthogonal side of maximal weight not exceeding n/2, then apply the
/// two-species bound at that weight.
pub fn general_mu_bound(mu: &Partition) -> Result<Rat> {
    let n = mu.size();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::Domain(format!("|mu| = {n} is not a power of two")));
    }
    let m = n.trailing_zeros() as u64;
    let parts = mu.parts();
    // largest tail sum not exceeding n/2
    let mut tail: u32 = 0;
    let mut h_star: u32 = 0;
    for &part in parts.iter().rev() {
        if tail + part > n / 2 {
            break;
        }
        tail += part;
        h_star = tail;
    }
    let g = gamma(h_star as u64, m);
    let binom = binomial_big(n as u64, h_star as u64);
    Ok(rat_u(1) - rat_int(g) / rat_int(binom))
}

/// Smallest power of two n <= n_max with n >= 2h whose recurrence bound
/// already reaches soundness 1 - 1/n, i.e. n * gamma(h, m) <= binomial(n, h).
pub fn threshold_n0(h: u32, n_max: u64) -> Option<u64> {
    if h == 0 {
        return None;
    }
    let mut table = GammaTable::new();
    let mut m = 64 - (2 * h as u64 - 1).leading_zeros() as u64; // smallest m with 2^m >= 2h
    loop {
        if m >= 63 {
            return None;
        }
        let n = 1u64 << m;
        if n > n_max {
            return None;
        }
        let lhs = Int::from(n) * table.get(h as u64, m);
        if lhs <= binomial_big(n, h as u64) {
            return Some(n);
        }
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;
    use crate::partitions::binomial;
    use crate::symgroup::{SubgroupSpec, DEFAULT_ELEMENT_BUDGET};
    use crate::tensor::{group_projector, hs, rho_states, DEFAULT_DIM_BUDGET};

    const B: u128 = DEFAULT_DIM_BUDGET;

    fn arr(s: &str) -> Arrangement {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_boundaries_and_small_values() {
        for m in 0..=10u64 {
            assert_eq!(gamma(0, m), Int::from(1));
            assert_eq!(gamma(1, m), Int::from(1));
        }
        for h in 2..=6u64 {
            assert_eq!(gamma(h, 0), Int::from(0));
        }
        for m in 0..=12u64 {
            assert_eq!(gamma(2, m), Int::from(m));
            assert_eq!(gamma(3, m), Int::from(m * m.saturating_sub(1) / 2));
        }
        assert_eq!(gamma(3, 4), Int::from(6));
        assert_eq!(gamma(2, 3), Int::from(3));
        assert_eq!(gamma(4, 3), Int::from(6));
    }

    #[test]
    fn gamma_vanishes_below_packing_depth() {
        for h in 2..=16u64 {
            for m in 0..5u64 {
                if (1u64 << m) < h {
                    assert_eq!(gamma(h, m), Int::from(0), "h={h} m={m}");
                }
            }
        }
    }

    #[test]
    fn gamma_reflection_symmetry() {
        for m in 0..=4u64 {
            let n = 1u64 << m;
            for h in 0..=n {
                let v = gamma_symmetric_checked(h, m).unwrap();
                assert_eq!(v, gamma(n - h, m), "h={h} m={m}");
            }
        }
        assert!(gamma_symmetric_checked(5, 2).is_err());
    }

    #[test]
    fn click_counts() {
        assert_eq!(click_lower_bound(&arr("0,0,0,0")).unwrap(), 0);
        assert_eq!(click_lower_bound(&arr("1,0,0,0,1,0,1,1")).unwrap(), 5);
        for m in 1..=4u32 {
            let n = 1usize << m;
            for pos in 0..n {
                let mut word = vec![0u32; n];
                word[pos] = 1;
                let a = Arrangement::new(word).unwrap();
                assert_eq!(click_lower_bound(&a).unwrap(), m, "n={n} pos={pos}");
            }
        }
        assert!(click_lower_bound(&arr("1,0,0")).is_err());
        assert!(click_lower_bound(&arr("2,0,0,0")).is_err());
    }

    #[test]
    fn accept_probabilities() {
        assert_eq!(ist_accept_prob(&arr("0,0,0,0"), 2, B).unwrap(), rat(1, 1));
        for m in 1..=3u32 {
            let n = 1usize << m;
            let mut word = vec![0u32; n];
            word[n / 2] = 1;
            let a = Arrangement::new(word).unwrap();
            assert_eq!(ist_accept_prob(&a, 2, B).unwrap(), rat(1, n as i64), "n={n}");
        }
        assert_eq!(ist_accept_prob(&arr("1,1,0,0"), 2, B).unwrap(), rat(1, 2));
        // three species on four registers
        assert_eq!(ist_accept_prob(&arr("1,2,0,0"), 3, B).unwrap(), rat(1, 4));
        assert!(ist_accept_prob(&arr("1,2,0,0"), 2, B).is_err());
        assert!(matches!(
            ist_accept_prob(&arr("1,0,0,0"), 2, 8),
            Err(Error::DimBudget { .. })
        ));
    }

    #[test]
    fn soundness_exact_values() {
        for n in [2u32, 4, 8] {
            let got = ist_soundness_exact(n, 1, 2, u128::MAX).unwrap();
            assert_eq!(got, rat(1, 1) - rat(1, n as i64), "n={n}");
        }
        assert_eq!(ist_soundness_exact(4, 2, 2, B).unwrap(), rat(2, 3));
        assert!(matches!(ist_soundness_exact(4, 0, 2, B), Err(Error::Promise(_))));
        assert!(matches!(ist_soundness_exact(4, 3, 2, B), Err(Error::Promise(_))));
        assert!(matches!(ist_soundness_exact(6, 1, 2, B), Err(Error::Domain(_))));
    }

    #[test]
    fn soundness_matches_wreath_projector_trace() {
        // averaged accept probability equals Tr[Pi_G rho-twirled] for the
        // binary-tree wreath group
        let mu = Partition::new(vec![2, 2]).unwrap();
        let proj = group_projector(&SubgroupSpec::IteratedWreath2(2), 4, 2, B, DEFAULT_ELEMENT_BUDGET)
            .unwrap();
        let states = rho_states(&mu, 4, 2, B).unwrap();
        let trace = hs(&proj, &states.rho_neq_twirled).unwrap();
        assert_eq!(mean_accept_prob(4, 2).unwrap(), trace);
    }

    #[test]
    fn bound_values() {
        for n in [2u32, 4, 8, 16, 32] {
            assert_eq!(
                ist_soundness_bound(n, 1).unwrap(),
                rat(1, 1) - rat(1, n as i64),
                "n={n}"
            );
        }
        assert_eq!(ist_soundness_bound(8, 2).unwrap(), rat(25, 28));
        assert_eq!(ist_soundness_bound(16, 3).unwrap(), rat(1, 1) - rat(6, 560));
        assert!(ist_soundness_bound(8, 5).is_err());
    }

    #[test]
    fn bound_never_exceeds_exact_soundness() {
        for n in [2u32, 4, 8] {
            for h in 1..=n / 2 {
                let exact = ist_soundness_exact(n, h, 2, u128::MAX).unwrap();
                let bound = ist_soundness_bound(n, h).unwrap();
                assert!(bound <= exact, "n={n} h={h}: bound {bound} > exact {exact}");
            }
        }
    }

    #[test]
    fn undercount_inequality_small() {
        // accept probability never exceeds (1/2)^clicks
        let half = rat(1, 2);
        for m in 1..=3u32 {
            let n = 1usize << m;
            for bits in 0..(1usize << n) {
                let word: Vec<u32> = (0..n).map(|i| ((bits >> i) & 1) as u32).collect();
                let a = Arrangement::new(word).unwrap();
                let accept = ist_accept_prob(&a, 2, u128::MAX).unwrap();
                let clicks = click_lower_bound(&a).unwrap();
                let cap: Rat = (0..clicks).map(|_| half.clone()).product();
                assert!(accept <= cap, "word {a}: {accept} > {cap}");
            }
        }
    }

    #[test]
    fn recurrence_realization_small() {
        // binomial(2^m, h) * mean click mass = gamma(h, m)
        for m in 0..=3u64 {
            let n = 1u32 << m;
            for h in 0..=n.min(4) {
                let mean = mean_click_mass(n, h).unwrap();
                let lhs = rat_u(binomial(n as u64, h as u64)) * mean.clone();
                assert_eq!(lhs, rat_int(gamma(h as u64, m)), "h={h} m={m}");
                // the click mass caps the exact accept probability
                assert!(mean_accept_prob(n, h).unwrap() <= mean, "h={h} m={m}");
            }
        }
    }

    #[test]
    fn general_promise_bound() {
        let bound = general_mu_bound(&Partition::new(vec![7, 1]).unwrap()).unwrap();
        assert_eq!(bound, rat(7, 8));
        let bound = general_mu_bound(&Partition::new(vec![4, 2, 2]).unwrap()).unwrap();
        assert_eq!(bound, rat(1, 1) - rat(6, 70));
        let bound = general_mu_bound(&Partition::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(bound, rat(1, 1) - rat(2, 6));
        // single species: vacuous zero bound
        let bound = general_mu_bound(&Partition::new(vec![8]).unwrap()).unwrap();
        assert_eq!(bound, rat(0, 1));
        assert!(general_mu_bound(&Partition::new(vec![5, 1]).unwrap()).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(threshold_n0(1, 1 << 20), Some(2));
        assert_eq!(threshold_n0(2, 1 << 20), Some(8));
        assert_eq!(threshold_n0(4, 4), None);
        assert_eq!(threshold_n0(4, 1 << 20), Some(8));
        // found threshold satisfies the defining inequality, its
        // predecessor does not
        for h in 1..=6u32 {
            let n = threshold_n0(h, 1 << 30).unwrap();
            let m = n.trailing_zeros() as u64;
            assert!(Int::from(n) * gamma(h as u64, m) <= binomial_big(n, h as u64));
            let prev = n / 2;
            if prev >= 2 * h as u64 {
                assert!(
                    Int::from(prev) * gamma(h as u64, m - 1) > binomial_big(prev, h as u64),
                    "h={h}"
                );
            }
        }
    }

    #[test]
    fn arrangement_parsing() {
        let a = arr("1,0,0,0,1,0,1,1");
        assert_eq!(a.n(), 8);
        assert_eq!(a.weight(), 4);
        assert_eq!(a.to_string(), "1,0,0,0,1,0,1,1");
        assert!("".parse::<Arrangement>().is_err());
        assert!("1,x".parse::<Arrangement>().is_err());
    }
}
