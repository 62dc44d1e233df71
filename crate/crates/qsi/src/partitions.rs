//! Integer partitions, Young tableaux, irrep dimensions, Kostka numbers,
//! and major-index statistics.
//!
//! Everything here is computed by explicit enumeration or by classical
//! product formulas; the two routes cross-check each other in the tests.
//! Instances are small (n <= 16), so enumeration doubles as its own proof.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::de::{SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A partition: weakly decreasing positive parts (trailing zeros stripped
/// on construction).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts; trailing zeros are
    /// dropped. Increasing input is rejected.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("parts {parts:?} are not weakly decreasing")));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from arbitrary nonnegative content by sorting.
    pub fn from_content(content: &[u32]) -> Self {
        let mut parts: Vec<u32> = content.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn single_row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part at `i` (0-indexed), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// |lambda| = sum of parts.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of positive parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&r| r as usize > c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Comma-separated rendering used by the CLI and CSV output, e.g. "3,1".
    pub fn compact(&self) -> String {
        self.parts.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.compact())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad part {t:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Partition;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of weakly decreasing nonnegative integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Partition, A::Error> {
                let mut parts = Vec::new();
                while let Some(p) = seq.next_element::<u32>()? {
                    parts.push(p);
                }
                Partition::new(parts).map_err(serde::de::Error::custom)
            }
        }
        de.deserialize_seq(V)
    }
}

/// All partitions of `n` with at most `max_len` parts, in decreasing
/// lexicographic order.
pub fn partitions_of(n: u32, max_len: usize) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = remaining.min(max_part);
        // First part large enough to fit the rest into the remaining slots.
        for k in (1..=hi).rev() {
            if remaining - k > k.saturating_mul((slots - 1) as u32) {
                break;
            }
            prefix.push(k);
            rec(remaining - k, k, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), max_len, &mut Vec::new(), &mut out);
    out
}

/// A standard Young tableau: strictly increasing rows and columns filled
/// with 1..n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Major index: the sum of descents, where `i` is a descent when `i+1`
    /// sits in a strictly lower row than `i`.
    pub fn major_index(&self) -> u32 {
        let n = self.shape.size();
        let mut row_of = vec![0usize; n as usize + 1];
        for (r, row) in self.rows.iter().enumerate() {
            for &v in row {
                row_of[v as usize] = r;
            }
        }
        (1..n).filter(|&i| row_of[i as usize + 1] > row_of[i as usize]).sum()
    }
}

/// Enumerates all standard Young tableaux of the given shape.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    let n = shape.size();
    let mut rows: Vec<Vec<u32>> = shape.parts().iter().map(|&r| vec![0; r as usize]).collect();
    let mut fill: Vec<usize> = vec![0; shape.len()]; // filled cells per row
    let mut out = Vec::new();
    fn rec(
        v: u32,
        n: u32,
        shape: &Partition,
        rows: &mut Vec<Vec<u32>>,
        fill: &mut Vec<usize>,
        out: &mut Vec<StandardTableau>,
    ) {
        if v > n {
            out.push(StandardTableau { shape: shape.clone(), rows: rows.clone() });
            return;
        }
        for r in 0..shape.len() {
            let c = fill[r];
            if c < shape.part(r) as usize && (r == 0 || fill[r - 1] > c) {
                rows[r][c] = v;
                fill[r] += 1;
                rec(v + 1, n, shape, rows, fill, out);
                fill[r] -= 1;
                rows[r][c] = 0;
            }
        }
    }
    rec(1, n, shape, &mut rows, &mut fill, &mut out);
    out
}

/// Dimension of the symmetric-group irrep for `lambda` (the number of
/// standard tableaux), by the hook-length product.
pub fn dim_symmetric(lambda: &Partition) -> u64 {
    let n = lambda.size() as u64;
    let conj = lambda.conjugate();
    let mut hooks: u128 = 1;
    for (i, &r) in lambda.parts().iter().enumerate() {
        for j in 0..r as usize {
            let hook = (r as u128 - j as u128) + (conj.part(j) as u128 - i as u128) - 1;
            hooks *= hook;
        }
    }
    let fact: u128 = (1..=n as u128).product();
    u64::try_from(fact / hooks).expect("symmetric dimension exceeds u64")
}

/// Dimension of the unitary-group irrep for `lambda` in local dimension
/// `d`, by the Weyl product formula. For a single row this equals
/// binomial(n+d-1, n).
pub fn dim_unitary(lambda: &Partition, d: u32) -> Result<u64> {
    if lambda.len() > d as usize {
        return Err(Error::Domain(format!(
            "partition {lambda} has more than d = {d} parts"
        )));
    }
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..d as usize {
        for j in (i + 1)..d as usize {
            let f = lambda.part(i) as i64 - lambda.part(j) as i64 + j as i64 - i as i64;
            num *= BigUint::from(f as u64);
            den *= BigUint::from((j - i) as u64);
        }
    }
    (num / den)
        .to_u64()
        .ok_or_else(|| Error::Domain("unitary dimension exceeds u64".into()))
}

/// Shape/content pair for a Kostka number. The content may be unsorted and
/// may contain zeros; Kostka numbers are invariant under reordering it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostkaQuery {
    pub lambda: Partition,
    pub content: Vec<u32>,
}

impl KostkaQuery {
    pub fn new(lambda: Partition, content: Vec<u32>) -> Result<Self> {
        let total: u32 = content.iter().sum();
        if lambda.size() != total {
            return Err(Error::SizeMismatch(format!(
                "|lambda| = {} but content sums to {total}",
                lambda.size()
            )));
        }
        Ok(KostkaQuery { lambda, content })
    }

    /// Number of semistandard tableaux of shape `lambda` and the given
    /// content, by direct enumeration.
    pub fn count(&self) -> u64 {
        count_ssyt(&self.lambda, &self.content)
    }
}

/// Kostka number K_{lambda,mu} for two partitions of equal size.
pub fn kostka(lambda: &Partition, mu: &Partition) -> Result<u64> {
    Ok(KostkaQuery::new(lambda.clone(), mu.parts().to_vec())?.count())
}

fn count_ssyt(shape: &Partition, content: &[u32]) -> u64 {
    // Backtracking over cells in row-major order; rows weakly increase,
    // columns strictly increase.
    let nvals = content.len();
    let mut remaining: Vec<u32> = content.to_vec();
    let mut rows: Vec<Vec<u32>> = shape.parts().iter().map(|&r| vec![0; r as usize]).collect();
    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &r)| (0..r as usize).map(move |j| (i, j)))
        .collect();

    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        nvals: usize,
        rows: &mut Vec<Vec<u32>>,
        remaining: &mut Vec<u32>,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (i, j) = cells[idx];
        let min_row = if j > 0 { rows[i][j - 1] } else { 1 };
        let min_col = if i > 0 { rows[i - 1][j] + 1 } else { 1 };
        let lo = min_row.max(min_col);
        let mut total = 0;
        for v in lo..=nvals as u32 {
            if remaining[v as usize - 1] == 0 {
                continue;
            }
            rows[i][j] = v;
            remaining[v as usize - 1] -= 1;
            total += rec(idx + 1, cells, nvals, rows, remaining);
            remaining[v as usize - 1] += 1;
            rows[i][j] = 0;
        }
        total
    }
    rec(0, &cells, nvals, &mut rows, &mut remaining)
}

/// Binomial coefficient as u64 (exact, u128 intermediates).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial exceeds u64")
}

/// Binomial coefficient as a big integer.
pub fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient n!/(mu_1! ... mu_d!) for a partition of n.
pub fn multinomial(mu: &Partition) -> u64 {
    multinomial_content(mu.parts())
}

/// Multinomial coefficient of an arbitrary nonnegative content vector.
pub fn multinomial_content(content: &[u32]) -> u64 {
    let mut rest: u64 = content.iter().map(|&x| x as u64).sum();
    let mut acc: u128 = 1;
    for &m in content {
        acc *= binomial(rest, m as u64) as u128;
        rest -= m as u64;
    }
    u64::try_from(acc).expect("multinomial exceeds u64")
}

/// Number of standard tableaux of shape `lambda` whose major index is
/// divisible by `n`; requires |lambda| = n.
pub fn count_maj_zero(lambda: &Partition, n: u32) -> Result<u64> {
    if lambda.size() != n {
        return Err(Error::SizeMismatch(format!("|{lambda}| = {} != {n}", lambda.size())));
    }
    if n == 0 {
        return Ok(1);
    }
    Ok(standard_tableaux(lambda)
        .iter()
        .filter(|t| t.major_index() % n == 0)
        .count() as u64)
}

/// Dominance order: every leading partial sum of `lambda` is at least the
/// corresponding sum of `mu`. Only meaningful for equal sizes.
pub fn dominates(lambda: &Partition, mu: &Partition) -> bool {
    let len = lambda.len().max(mu.len());
    let mut sl: u64 = 0;
    let mut sm: u64 = 0;
    for i in 0..len {
        sl += lambda.part(i) as u64;
        sm += mu.part(i) as u64;
        if sl < sm {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn construction_and_normalization() {
        assert_eq!(p(&[3, 1, 0, 0]).parts(), &[3, 1]);
        assert!(Partition::new(vec![1, 3]).is_err());
        assert_eq!(Partition::from_content(&[1, 3, 0, 2]).parts(), &[3, 2, 1]);
        assert_eq!("3,1".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!(serde_json::to_string(&p(&[3, 1])).unwrap(), "[3,1]");
        assert_eq!(serde_json::from_str::<Partition>("[3,1]").unwrap(), p(&[3, 1]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn enumeration_in_decreasing_lex_order() {
        assert_eq!(partitions_of(0, 3), vec![Partition::empty()]);
        assert_eq!(partitions_of(4, 2), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(partitions_of(3, 3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        // no duplicates, all sizes correct
        let all = partitions_of(8, 8);
        let mut seen = std::collections::HashSet::new();
        for q in &all {
            assert_eq!(q.size(), 8);
            assert!(seen.insert(q.clone()));
        }
        assert_eq!(all.len(), 22);
    }

    #[test]
    fn symmetric_dimensions() {
        assert_eq!(dim_symmetric(&p(&[5])), 1);
        assert_eq!(dim_symmetric(&p(&[1, 1, 1])), 1);
        assert_eq!(dim_symmetric(&p(&[2, 1])), 2);
        assert_eq!(dim_symmetric(&p(&[4, 4])), 14);
    }

    #[test]
    fn hook_formula_matches_enumeration_up_to_8() {
        for n in 0..=8u32 {
            for lam in partitions_of(n, n as usize) {
                assert_eq!(
                    dim_symmetric(&lam),
                    standard_tableaux(&lam).len() as u64,
                    "shape {lam}"
                );
            }
        }
    }

    #[test]
    fn sum_of_squares_is_factorial() {
        for n in 1..=8u32 {
            let total: u64 = partitions_of(n, n as usize)
                .iter()
                .map(|l| dim_symmetric(l).pow(2))
                .sum();
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(total, fact, "n = {n}");
        }
    }

    #[test]
    fn unitary_dimensions() {
        assert_eq!(dim_unitary(&p(&[2]), 2).unwrap(), 3);
        assert_eq!(dim_unitary(&p(&[1]), 7).unwrap(), 7);
        assert_eq!(dim_unitary(&p(&[1, 1]), 2).unwrap(), 1);
        assert_eq!(dim_unitary(&p(&[2, 2]), 2).unwrap(), 1);
        assert!(dim_unitary(&p(&[1, 1, 1]), 2).is_err());
        // single row equals binomial(n+d-1, n)
        for n in 0..=8u64 {
            for d in 1..=4u32 {
                assert_eq!(
                    dim_unitary(&Partition::single_row(n as u32), d).unwrap(),
                    binomial(n + d as u64 - 1, n)
                );
            }
        }
    }

    #[test]
    fn schur_weyl_dimension_count() {
        for n in 1..=6u32 {
            for d in 1..=3u32 {
                let total: u64 = partitions_of(n, d as usize)
                    .iter()
                    .map(|l| dim_symmetric(l) * dim_unitary(l, d).unwrap())
                    .sum();
                assert_eq!(total, (d as u64).pow(n), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn kostka_values() {
        assert_eq!(kostka(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(kostka(&p(&[2, 2]), &p(&[2, 2])).unwrap(), 1);
        assert_eq!(kostka(&p(&[3, 1]), &p(&[2, 2])).unwrap(), 1);
        // K_{lambda,lambda} = 1, K_{(n),mu} = 1
        for n in 1..=7u32 {
            for mu in partitions_of(n, n as usize) {
                assert_eq!(kostka(&mu, &mu).unwrap(), 1);
                assert_eq!(kostka(&Partition::single_row(n), &mu).unwrap(), 1);
            }
        }
        assert!(kostka(&p(&[2, 1]), &p(&[2, 2])).is_err());
    }

    #[test]
    fn kostka_invariant_under_content_permutation() {
        let lam = p(&[3, 2, 1]);
        let contents = [
            vec![3, 2, 1],
            vec![1, 2, 3],
            vec![2, 1, 3],
            vec![0, 3, 1, 2],
            vec![3, 0, 2, 0, 1],
        ];
        let base = KostkaQuery::new(lam.clone(), contents[0].clone()).unwrap().count();
        for c in &contents[1..] {
            assert_eq!(KostkaQuery::new(lam.clone(), c.clone()).unwrap().count(), base);
        }
    }

    #[test]
    fn kostka_vanishes_without_dominance() {
        for n in 1..=7u32 {
            for lam in partitions_of(n, n as usize) {
                for mu in partitions_of(n, n as usize) {
                    let k = kostka(&lam, &mu).unwrap();
                    if !dominates(&lam, &mu) {
                        assert_eq!(k, 0, "K_{{{lam},{mu}}}");
                    }
                }
            }
        }
    }

    #[test]
    fn kostka_dimension_identity() {
        // sum_{lambda with at most l(mu) rows} K_{lambda,mu} d_lambda = multinomial(mu)
        for n in 1..=8u32 {
            for mu in partitions_of(n, n as usize) {
                let d = mu.len();
                let total: u64 = partitions_of(n, d)
                    .iter()
                    .map(|l| kostka(l, &mu).unwrap() * dim_symmetric(l))
                    .sum();
                assert_eq!(total, multinomial(&mu), "mu = {mu}");
            }
        }
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&p(&[5])), 1);
        assert_eq!(multinomial(&p(&[3, 1])), 4);
        assert_eq!(multinomial(&p(&[2, 2])), 6);
        assert_eq!(multinomial(&p(&[2, 1, 1])), 12);
    }

    #[test]
    fn major_index_counts() {
        assert_eq!(count_maj_zero(&p(&[6]), 6).unwrap(), 1);
        for n in 2..=8u32 {
            let hook = Partition::new(vec![n - 1, 1]).unwrap();
            assert_eq!(count_maj_zero(&hook, n).unwrap(), 0, "n = {n}");
        }
        assert_eq!(count_maj_zero(&p(&[2, 2]), 4).unwrap(), 1);
        assert!(count_maj_zero(&p(&[2, 2]), 5).is_err());
    }
}
