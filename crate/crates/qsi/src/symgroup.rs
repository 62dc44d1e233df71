//! Permutations, cycle types, symmetric-group characters, subgroup
//! expansion, and trivial-irrep multiplicities.

use serde::de::{SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Default cap on the number of elements a subgroup expansion may produce.
pub const DEFAULT_ELEMENT_BUDGET: usize = 1_000_000;

/// A permutation of {0..n-1}, stored as the image list `images[i] = pi(i)`.
/// Documentation and serialized forms are 1-indexed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::Domain(format!("images {images:?} are not a bijection")));
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    /// Builds from disjoint (or overlapping-last-wins) cycles on {0..n-1}.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for (idx, &a) in cyc.iter().enumerate() {
                let b = cyc[(idx + 1) % cyc.len()];
                if a >= n || b >= n {
                    return Err(Error::Domain(format!("cycle point out of range 0..{n}")));
                }
                images[a] = b;
            }
        }
        Perm::new(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Group product `self âˆ˜ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n(), "composing permutations of different degree");
        Perm { images: (0..self.n()).map(|i| self.images[other.images[i]]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &v)| i == v).count()
    }

    /// 1-indexed image list, the serialized form.
    pub fn one_indexed(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.one_indexed().iter().map(usize::to_string).collect();
        write!(f, "[{}]", imgs.join(","))
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_indexed().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Perm;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a 1-indexed permutation image array")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Perm, A::Error> {
                let mut images = Vec::new();
                while let Some(v) = seq.next_element::<usize>()? {
                    if v == 0 {
                        return Err(serde::de::Error::custom("images are 1-indexed"));
                    }
                    images.push(v - 1);
                }
                Perm::new(images).map_err(serde::de::Error::custom)
            }
        }
        de.deserialize_seq(V)
    }
}

/// Cycle type of a permutation as a partition of its degree.
pub fn cycle_type(p: &Perm) -> Partition {
    let n = p.n();
    let mut seen = vec![false; n];
    let mut lens = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = p.apply(j);
            len += 1;
        }
        lens.push(len);
    }
    Partition::from_content(&lens)
}

/// All permutations of {0..n-1} in lexicographic order of image lists.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == n {
            out.push(Perm { images: cur.clone() });
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Symbolic description of a subgroup of the symmetric group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupSpec {
    /// The full symmetric group on n points.
    Symmetric(u32),
    /// The cyclic group generated by the n-cycle (1 2 ... n).
    Cyclic(u32),
    /// The automorphism group of the complete binary tree with 2^m leaves,
    /// generated by the 2^m - 1 tree-level block swaps; order 2^(2^m - 1).
    #[serde(rename = "iterated_wreath_2")]
    IteratedWreath2(u32),
    /// Closure of an explicit generator list.
    Generators(Vec<Perm>),
}

impl SubgroupSpec {
    /// Size of the ground set the subgroup acts on.
    pub fn ground_size(&self) -> Result<usize> {
        match self {
            SubgroupSpec::Symmetric(n) | SubgroupSpec::Cyclic(n) => Ok(*n as usize),
            SubgroupSpec::IteratedWreath2(m) => {
                if *m >= usize::BITS {
                    return Err(Error::Domain(format!("wreath depth {m} too large")));
                }
                Ok(1usize << m)
            }
            SubgroupSpec::Generators(gens) => {
                let Some(first) = gens.first() else {
                    return Err(Error::Domain("empty generator list".into()));
                };
                if gens.iter().any(|g| g.n() != first.n()) {
                    return Err(Error::SizeMismatch(
                        "generators act on different ground sets".into(),
                    ));
                }
                Ok(first.n())
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            SubgroupSpec::Symmetric(n) => format!("symmetric({n})"),
            SubgroupSpec::Cyclic(n) => format!("cyclic({n})"),
            SubgroupSpec::IteratedWreath2(m) => format!("iterated_wreath_2({m})"),
            SubgroupSpec::Generators(g) => format!("generators({})", g.len()),
        }
    }
}

/// The 2^m - 1 canonical tree-level block swaps generating the iterated
/// wreath product on 2^m leaves: leaf pairs first, then adjacent 2-blocks,
/// and so on up to the two halves.
pub fn wreath2_generators(m: u32) -> Result<Vec<Perm>> {
    if m >= usize::BITS - 1 {
        return Err(Error::Domain(format!("wreath depth {m} too large")));
    }
    let n = 1usize << m;
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for level in 0..m {
        let bs = 1usize << level;
        for b in 0..n / (2 * bs) {
            let lo = 2 * b * bs;
            let mut images: Vec<usize> = (0..n).collect();
            for i in 0..bs {
                images.swap(lo + i, lo + bs + i);
            }
            gens.push(Perm { images });
        }
    }
    Ok(gens)
}

fn closure(gens: &[Perm], budget: usize) -> Result<Vec<Perm>> {
    let n = gens.first().map_or(0, Perm::n);
    let identity = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = g.compose(h);
            if !seen.contains(&gh) {
                if seen.len() >= budget {
                    return Err(Error::ElementBudget { budget });
                }
                seen.insert(gh.clone());
                queue.push_back(gh);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Expands a subgroup description to its complete, duplicate-free element
/// list, sorted canonically by image lists.
pub fn expand_subgroup(spec: &SubgroupSpec, budget: usize) -> Result<Vec<Perm>> {
    let n = spec.ground_size()?;
    match spec {
        SubgroupSpec::Symmetric(_) => {
            let mut order: usize = 1;
            for k in 2..=n {
                order = order.saturating_mul(k);
                if order > budget {
                    return Err(Error::ElementBudget { budget });
                }
            }
            Ok(all_perms(n))
        }
        SubgroupSpec::Cyclic(_) => {
            if n > budget {
                return Err(Error::ElementBudget { budget });
            }
            let shift = Perm { images: (0..n).map(|i| (i + 1) % n.max(1)).collect() };
            let mut out = Vec::with_capacity(n);
            let mut cur = Perm::identity(n);
            for _ in 0..n.max(1) {
                out.push(cur.clone());
                cur = shift.compose(&cur);
            }
            out.sort();
            out.dedup();
            Ok(out)
        }
        SubgroupSpec::IteratedWreath2(m) => closure(&wreath2_generators(*m)?, budget),
        SubgroupSpec::Generators(gens) => closure(gens, budget),
    }
}

/// Character chi^lambda evaluated on a conjugacy class, given by the cycle
/// type. Computed by border-strip removal on first-column hook lengths and
/// memoized globally per (shape, type) pair.
pub fn character(lambda: &Partition, class: &Partition) -> Result<i64> {
    if lambda.size() != class.size() {
        return Err(Error::SizeMismatch(format!(
            "character of {lambda} at class {class} of different size"
        )));
    }
    type CharMemo = Mutex<HashMap<(Vec<u32>, Vec<u32>), i64>>;
    static MEMO: OnceLock<CharMemo> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    fn rec(lam: &[u32], rho: &[u32], memo: &CharMemo) -> i64 {
        if lam.is_empty() {
            return 1;
        }
        let key = (lam.to_vec(), rho.to_vec());
        if let Some(&v) = memo.lock().unwrap().get(&key) {
            return v;
        }
        let t = rho[0] as i64;
        let k = lam.len();
        let beta: Vec<i64> =
            (0..k).map(|i| lam[i] as i64 + (k - 1 - i) as i64).collect();
        let in_beta = |x: i64| beta.contains(&x);
        let mut total = 0i64;
        for &b in &beta {
            if b >= t && !in_beta(b - t) {
                let height = beta.iter().filter(|&&x| b - t < x && x < b).count();
                let mut nb: Vec<i64> =
                    beta.iter().copied().filter(|&x| x != b).chain([b - t]).collect();
                nb.sort_unstable_by(|a, c| c.cmp(a));
                let kk = nb.len();
                let nl: Vec<u32> = (0..kk)
                    .map(|i| (nb[i] - (kk - 1 - i) as i64) as u32)
                    .filter(|&x| x > 0)
                    .collect();
                let sign = if height % 2 == 0 { 1 } else { -1 };
                total += sign * rec(&nl, &rho[1..], memo);
            }
        }
        memo.lock().unwrap().insert(key, total);
        total
    }
    Ok(rec(lambda.parts(), class.parts(), memo))
}

/// Counts elements per cycle type.
pub fn cycle_type_census(elems: &[Perm]) -> HashMap<Partition, u64> {
    let mut census = HashMap::new();
    for g in elems {
        *census.entry(cycle_type(g)).or_insert(0u64) += 1;
    }
    census
}

/// Multiplicity of the trivial irrep of the subgroup inside the
/// symmetric-group irrep `lambda`, as the averaged character over the
/// expanded element list.
pub fn trivial_multiplicity(
    spec: &SubgroupSpec,
    lambda: &Partition,
    budget: usize,
) -> Result<u64> {
    let n = spec.ground_size()?;
    if lambda.size() as usize != n {
        return Err(Error::SizeMismatch(format!(
            "|{lambda}| = {} but the subgroup acts on {n} points",
            lambda.size()
        )));
    }
    let elems = expand_subgroup(spec, budget)?;
    let order = elems.len() as i64;
    let mut total: i64 = 0;
    for (class, count) in cycle_type_census(&elems) {
        total += character(lambda, &class)? * count as i64;
    }
    if total % order != 0 || total < 0 {
        return Err(Error::Inconsistency(format!(
            "character sum {total} over {} is not a nonnegative multiple of the order",
            spec.label()
        )));
    }
    Ok((total / order) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{count_maj_zero, dim_symmetric, partitions_of};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn perm_basics() {
        let id = Perm::identity(4);
        assert_eq!(cycle_type(&id), p(&[1, 1, 1, 1]));
        let four_cycle = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(cycle_type(&four_cycle), p(&[4]));
        let double = Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap();
        assert_eq!(cycle_type(&double), p(&[2, 2]));
        assert_eq!(double.compose(&double), id);
        assert_eq!(four_cycle.compose(&four_cycle.inverse()), id);
        assert!(Perm::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn perm_serialization_is_one_indexed() {
        let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), "[2,1,3]");
        assert_eq!(serde_json::from_str::<Perm>("[2,1,3]").unwrap(), t);
        assert!(serde_json::from_str::<Perm>("[0,1,2]").is_err());
    }

    #[test]
    fn subgroup_spec_json() {
        assert_eq!(
            serde_json::to_string(&SubgroupSpec::Cyclic(5)).unwrap(),
            r#"{"cyclic":5}"#
        );
        assert_eq!(
            serde_json::from_str::<SubgroupSpec>(r#"{"iterated_wreath_2":2}"#).unwrap(),
            SubgroupSpec::IteratedWreath2(2)
        );
    }

    #[test]
    fn expand_cyclic() {
        let els = expand_subgroup(&SubgroupSpec::Cyclic(3), DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(els.len(), 3);
        assert!(els.contains(&Perm::identity(3)));
        assert!(els.contains(&Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()));
        assert!(els.contains(&Perm::from_cycles(3, &[&[0, 2, 1]]).unwrap()));
    }

    #[test]
    fn expand_wreath() {
        // depth 2: the closure of (12), (34), (13)(24) inside S_4
        let w2 = expand_subgroup(&SubgroupSpec::IteratedWreath2(2), DEFAULT_ELEMENT_BUDGET)
            .unwrap();
        assert_eq!(w2.len(), 8);
        let gens = vec![
            Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(4, &[&[2, 3]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
        ];
        let direct = closure(&gens, DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(w2, direct);

        let w3 = expand_subgroup(&SubgroupSpec::IteratedWreath2(3), DEFAULT_ELEMENT_BUDGET)
            .unwrap();
        assert_eq!(w3.len(), 128);

        // order 2^(2^m - 1)
        for m in 1..=4u32 {
            let els =
                expand_subgroup(&SubgroupSpec::IteratedWreath2(m), DEFAULT_ELEMENT_BUDGET)
                    .unwrap();
            assert_eq!(els.len(), 1usize << ((1usize << m) - 1));
        }
    }

    #[test]
    fn closure_is_a_group() {
        let els = expand_subgroup(&SubgroupSpec::IteratedWreath2(2), DEFAULT_ELEMENT_BUDGET)
            .unwrap();
        let set: HashSet<_> = els.iter().cloned().collect();
        for a in &els {
            assert!(set.contains(&a.inverse()));
            for b in &els {
                assert!(set.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn element_budget_enforced() {
        let r = expand_subgroup(&SubgroupSpec::Symmetric(12), DEFAULT_ELEMENT_BUDGET);
        assert!(matches!(r, Err(Error::ElementBudget { .. })));
        let r = expand_subgroup(&SubgroupSpec::IteratedWreath2(2), 4);
        assert!(matches!(r, Err(Error::ElementBudget { budget: 4 })));
    }

    #[test]
    fn characters() {
        // trivial irrep
        for n in 1..=6u32 {
            for class in partitions_of(n, n as usize) {
                assert_eq!(character(&Partition::single_row(n), &class).unwrap(), 1);
            }
        }
        // sign character on a transposition
        assert_eq!(character(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap(), -1);
        // standard representation: fix(g) - 1
        assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(character(&p(&[2, 1]), &p(&[2, 1])).unwrap(), 0);
        assert_eq!(character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        // identity class gives the dimension
        for n in 1..=7u32 {
            let ones = Partition::new(vec![1; n as usize]).unwrap();
            for lam in partitions_of(n, n as usize) {
                assert_eq!(character(&lam, &ones).unwrap(), dim_symmetric(&lam) as i64);
            }
        }
        assert!(character(&p(&[2, 1]), &p(&[2, 2])).is_err());
    }

    #[test]
    fn standard_character_counts_fixed_points() {
        for g in all_perms(5) {
            let chi = character(&p(&[4, 1]), &cycle_type(&g)).unwrap();
            assert_eq!(chi, g.fixed_points() as i64 - 1);
        }
    }

    #[test]
    fn trivial_multiplicities() {
        // r^G_(n) = 1 for every subgroup
        for spec in [
            SubgroupSpec::Symmetric(4),
            SubgroupSpec::Cyclic(4),
            SubgroupSpec::IteratedWreath2(2),
        ] {
            assert_eq!(
                trivial_multiplicity(&spec, &p(&[4]), DEFAULT_ELEMENT_BUDGET).unwrap(),
                1
            );
        }
        // transitive wreath action kills the standard representation
        for m in 1..=3u32 {
            let n = 1u32 << m;
            let spec = SubgroupSpec::IteratedWreath2(m);
            assert_eq!(
                trivial_multiplicity(&spec, &Partition::new(vec![n - 1, 1]).unwrap(),
                    DEFAULT_ELEMENT_BUDGET)
                .unwrap(),
                0
            );
        }
        assert_eq!(
            trivial_multiplicity(&SubgroupSpec::Cyclic(4), &p(&[2, 2]), DEFAULT_ELEMENT_BUDGET)
                .unwrap(),
            1
        );
    }

    #[test]
    fn multiplicity_in_full_symmetric_group_is_delta() {
        for n in 1..=6u32 {
            let spec = SubgroupSpec::Symmetric(n);
            for lam in partitions_of(n, n as usize) {
                let expected = u64::from(lam == Partition::single_row(n));
                assert_eq!(
                    trivial_multiplicity(&spec, &lam, DEFAULT_ELEMENT_BUDGET).unwrap(),
                    expected,
                    "lambda = {lam}"
                );
            }
        }
    }

    #[test]
    fn frobenius_reciprocity_dimension_count() {
        // sum_lambda d_lambda r^G_lambda = n!/|G|
        let cases: Vec<(SubgroupSpec, u32)> = vec![
            (SubgroupSpec::Cyclic(4), 4),
            (SubgroupSpec::Cyclic(6), 6),
            (SubgroupSpec::Cyclic(8), 8),
            (SubgroupSpec::IteratedWreath2(2), 4),
            (SubgroupSpec::IteratedWreath2(3), 8),
            (
                SubgroupSpec::Generators(vec![Perm::from_cycles(5, &[&[0, 1], &[2, 3]]).unwrap()]),
                5,
            ),
        ];
        for (spec, n) in cases {
            let order = expand_subgroup(&spec, DEFAULT_ELEMENT_BUDGET).unwrap().len() as u64;
            let fact: u64 = (1..=n as u64).product();
            let total: u64 = partitions_of(n, n as usize)
                .iter()
                .map(|l| {
                    dim_symmetric(l)
                        * trivial_multiplicity(&spec, l, DEFAULT_ELEMENT_BUDGET).unwrap()
                })
                .sum();
            assert_eq!(total, fact / order, "{}", spec.label());
        }
    }

    #[test]
    fn cyclic_multiplicity_equals_major_index_count() {
        for n in 1..=8u32 {
            let spec = SubgroupSpec::Cyclic(n);
            for lam in partitions_of(n, n as usize) {
                assert_eq!(
                    trivial_multiplicity(&spec, &lam, DEFAULT_ELEMENT_BUDGET).unwrap(),
                    count_maj_zero(&lam, n).unwrap(),
                    "n = {n}, lambda = {lam}"
                );
            }
        }
    }

    #[test]
    fn wreath_burnside_average_is_one() {
        // transitivity: the average number of fixed points equals one
        for m in 1..=4u32 {
            let els = expand_subgroup(&SubgroupSpec::IteratedWreath2(m), DEFAULT_ELEMENT_BUDGET)
                .unwrap();
            let total: usize = els.iter().map(Perm::fixed_points).sum();
            assert_eq!(total, els.len(), "m = {m}");
        }
    }
}
