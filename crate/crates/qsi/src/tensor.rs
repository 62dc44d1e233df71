//! Exact operators on the n-fold tensor power of a d-dimensional space:
//! register-permutation actions, isotypic and subgroup projectors, the
//! twirled input states of the state-identity problem, and an independent
//! Haar-twirl oracle via Hilbert–Schmidt projection onto the permutation
//! commutant.
//!
//! Register convention: the permutation action `psi(pi)` moves the contents
//! of register `k` to register `pi(k)`, so `psi(pi) psi(sigma) =
//! psi(pi sigma)`. Basis strings are big-endian: register 0 is the most
//! significant digit of the basis index.

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::scalar::{format_rat, parse_rat, rat_int, rat_u};
use crate::exact::{hs_inner, solve_consistent, Matrix};
use crate::partitions::{
    binomial, dim_symmetric, dim_unitary, kostka, multinomial, partitions_of, Partition,
};
use crate::symgroup::{all_perms, character, cycle_type, expand_subgroup, Perm, SubgroupSpec};
use crate::{Mat, Rat};

/// Default cap on the tensor-space dimension d^n.
pub const DEFAULT_DIM_BUDGET: u128 = 4096;

/// Checks d^n against the budget and returns it as a usize.
pub fn side_checked(n: u32, d: u32, budget: u128) -> Result<usize> {
    if d < 1 {
        return Err(Error::Domain("local dimension must be at least 1".into()));
    }
    let dim = (d as u128)
        .checked_pow(n)
        .ok_or(Error::DimBudget { dim: u128::MAX, budget })?;
    if dim > budget {
        return Err(Error::DimBudget { dim, budget });
    }
    Ok(dim as usize)
}

/// Exact operator on (C^d)^{tensor n}, tagged with its register metadata.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorOp {
    pub n: u32,
    pub d: u32,
    pub mat: Mat,
}

impl TensorOp {
    pub fn new(n: u32, d: u32, mat: Mat) -> Result<Self> {
        let side = (d as u128).checked_pow(n).unwrap_or(u128::MAX);
        if mat.rows() as u128 != side || mat.cols() as u128 != side {
            return Err(Error::Shape(format!(
                "operator is {}x{} but d^n = {side}",
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(TensorOp { n, d, mat })
    }

    pub fn side(&self) -> usize {
        self.mat.rows()
    }

    pub fn trace(&self) -> Rat {
        self.mat.trace()
    }
}

impl Serialize for TensorOp {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: u32,
            d: u32,
            entries: Vec<Vec<String>>,
        }
        let entries = (0..self.side())
            .map(|i| (0..self.side()).map(|j| format_rat(self.mat.at(i, j))).collect())
            .collect();
        Repr { n: self.n, d: self.d, entries }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TensorOp {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: u32,
            d: u32,
            entries: Vec<Vec<String>>,
        }
        let r = Repr::deserialize(de)?;
        let rows = r
            .entries
            .iter()
            .map(|row| row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<Rat>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let mat = Mat::from_rows(rows).map_err(D::Error::custom)?;
        TensorOp::new(r.n, r.d, mat).map_err(D::Error::custom)
    }
}

/// Decodes a basis index into its register word (big-endian).
pub fn index_to_word(index: usize, n: u32, d: u32) -> Vec<u32> {
    let mut word = vec![0u32; n as usize];
    let mut x = index;
    for k in (0..n as usize).rev() {
        word[k] = (x % d as usize) as u32;
        x /= d as usize;
    }
    word
}

/// Encodes a register word into its basis index.
pub fn word_to_index(word: &[u32], d: u32) -> usize {
    word.iter().fold(0usize, |acc, &c| acc * d as usize + c as usize)
}

/// Basis-index relabeling of `psi(pi)`: entry `map[j]` is the row index of
/// the single 1 in column `j`.
fn perm_index_map(pi: &Perm, n: u32, d: u32, side: usize) -> Vec<usize> {
    let mut map = Vec::with_capacity(side);
    let mut out = vec![0u32; n as usize];
    for j in 0..side {
        let word = index_to_word(j, n, d);
        for (k, &c) in word.iter().enumerate() {
            out[pi.apply(k)] = c;
        }
        map.push(word_to_index(&out, d));
    }
    map
}

/// The 0/1 matrix of the register-permutation action of `pi`.
pub fn perm_operator(pi: &Perm, n: u32, d: u32, budget: u128) -> Result<TensorOp> {
    if pi.n() != n as usize {
        return Err(Error::SizeMismatch(format!(
            "permutation of degree {} on {n} registers",
            pi.n()
        )));
    }
    let side = side_checked(n, d, budget)?;
    let map = perm_index_map(pi, n, d, side);
    let mut mat = Mat::zeros(side, side);
    for (j, &i) in map.iter().enumerate() {
        *mat.at_mut(i, j) = rat_u(1);
    }
    TensorOp::new(n, d, mat)
}

/// Scales an integer accumulation grid into a rational matrix.
fn scaled(acc: &[i64], side: usize, factor: &Rat) -> Mat {
    Mat::from_fn(side, side, |i, j| {
        let v = acc[i * side + j];
        if v == 0 {
            Rat::from_integer(0.into())
        } else {
            rat_int(v) * factor.clone()
        }
    })
}

/// All isotypic projectors for shapes of `n` cells with at most `d` rows,
/// built in a single sweep over the symmetric group.
pub struct Isotypics {
    pub n: u32,
    pub d: u32,
    list: Vec<(Partition, Mat)>,
}

impl Isotypics {
    pub fn build(n: u32, d: u32, budget: u128) -> Result<Self> {
        let side = side_checked(n, d, budget)?;
        let shapes = partitions_of(n, d as usize);
        let mut accs: Vec<Vec<i64>> = vec![vec![0i64; side * side]; shapes.len()];
        for pi in all_perms(n as usize) {
            let class = cycle_type(&pi);
            let map = perm_index_map(&pi, n, d, side);
            for (s, shape) in shapes.iter().enumerate() {
                let chi = character(shape, &class)?;
                if chi == 0 {
                    continue;
                }
                let acc = &mut accs[s];
                for (j, &i) in map.iter().enumerate() {
                    acc[i * side + j] += chi;
                }
            }
        }
        let fact: u64 = (1..=n.max(1) as u64).product();
        let list = shapes
            .into_iter()
            .zip(accs)
            .map(|(shape, acc)| {
                let factor = rat_u(dim_symmetric(&shape)) / rat_u(fact);
                let mat = scaled(&acc, side, &factor);
                (shape, mat)
            })
            .collect();
        Ok(Isotypics { n, d, list })
    }

    pub fn get(&self, lambda: &Partition) -> Option<&Mat> {
        self.list.iter().find(|(l, _)| l == lambda).map(|(_, m)| m)
    }

    /// Projector onto the fully symmetric component.
    pub fn symmetric(&self) -> &Mat {
        self.get(&Partition::single_row(self.n)).expect("single-row shape always present")
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Mat)> {
        self.list.iter().map(|(l, m)| (l, m))
    }
}

/// Isotypic projector for a single shape: the character-weighted average of
/// all register permutations. Zero when the shape has more than `d` rows.
pub fn isotypic_projector(lambda: &Partition, n: u32, d: u32, budget: u128) -> Result<TensorOp> {
    if lambda.size() != n {
        return Err(Error::SizeMismatch(format!("|{lambda}| != {n}")));
    }
    let side = side_checked(n, d, budget)?;
    let mut acc = vec![0i64; side * side];
    for pi in all_perms(n as usize) {
        let chi = character(lambda, &cycle_type(&pi))?;
        if chi == 0 {
            continue;
        }
        let map = perm_index_map(&pi, n, d, side);
        for (j, &i) in map.iter().enumerate() {
            acc[i * side + j] += chi;
        }
    }
    let fact: u64 = (1..=n.max(1) as u64).product();
    let factor = rat_u(dim_symmetric(lambda)) / rat_u(fact);
    TensorOp::new(n, d, scaled(&acc, side, &factor))
}

/// Projector onto the trivial isotypic component of a subgroup: the plain
/// average of its register-permutation operators.
pub fn group_projector(
    spec: &SubgroupSpec,
    n: u32,
    d: u32,
    dim_budget: u128,
    elem_budget: usize,
) -> Result<TensorOp> {
    if spec.ground_size()? != n as usize {
        return Err(Error::SizeMismatch(format!(
            "subgroup {} does not act on {n} points",
            spec.label()
        )));
    }
    let side = side_checked(n, d, dim_budget)?;
    let elems = expand_subgroup(spec, elem_budget)?;
    let mut acc = vec![0i64; side * side];
    for g in &elems {
        let map = perm_index_map(g, n, d, side);
        for (j, &i) in map.iter().enumerate() {
            acc[i * side + j] += 1;
        }
    }
    let factor = rat_u(1) / rat_u(elems.len() as u64);
    TensorOp::new(n, d, scaled(&acc, side, &factor))
}

/// Word `0^{mu_1} 1^{mu_2} ...` encoding one basis species per part.
pub fn mu_word(mu: &Partition) -> Vec<u32> {
    let mut word = Vec::with_capacity(mu.size() as usize);
    for (i, &m) in mu.parts().iter().enumerate() {
        word.extend(std::iter::repeat(i as u32).take(m as usize));
    }
    word
}

/// Rank-one projector onto the basis product state of a word.
pub fn basis_word_projector(word: &[u32], d: u32, budget: u128) -> Result<TensorOp> {
    let n = word.len() as u32;
    if word.iter().any(|&c| c >= d) {
        return Err(Error::Domain(format!("word labels must be below d = {d}")));
    }
    let side = side_checked(n, d, budget)?;
    let idx = word_to_index(word, d);
    let mut mat = Mat::zeros(side, side);
    *mat.at_mut(idx, idx) = rat_u(1);
    TensorOp::new(n, d, mat)
}

/// Tensor product of symmetric projectors, one per part of `mu`, acting on
/// consecutive register blocks.
pub fn symmetric_block_projector(mu: &Partition, n: u32, d: u32, budget: u128) -> Result<TensorOp> {
    if mu.size() != n {
        return Err(Error::SizeMismatch(format!("|{mu}| != {n}")));
    }
    side_checked(n, d, budget)?;
    let mut mat = Mat::identity(1);
    for &m in mu.parts() {
        let factor = isotypic_projector(&Partition::single_row(m), m, d, u128::MAX)?;
        mat = mat.kron(&factor.mat);
    }
    TensorOp::new(n, d, mat)
}

/// The three twirled input states for a promise `mu`.
pub struct RhoStates {
    /// Haar twirl of the ordered species word.
    pub rho_neq: TensorOp,
    /// Additionally averaged over all register permutations.
    pub rho_neq_twirled: TensorOp,
    /// The all-equal state: symmetric projector normalized to trace one.
    pub rho_eq: TensorOp,
}

/// Builds the twirled states from a prebuilt isotypic set.
pub fn rho_states_with(iso: &Isotypics, mu: &Partition) -> Result<RhoStates> {
    let (n, d) = (iso.n, iso.d);
    if mu.size() != n {
        return Err(Error::SizeMismatch(format!("|{mu}| != {n}")));
    }
    if mu.len() > d as usize {
        return Err(Error::Domain(format!("{mu} has more than d = {d} species")));
    }
    let side = iso.symmetric().rows();
    let block = symmetric_block_projector(mu, n, d, u128::MAX)?;

    let mut rho_neq = Mat::zeros(side, side);
    let mut rho_twirled = Mat::zeros(side, side);
    for (lambda, proj) in iso.iter() {
        let m_dim = rat_u(dim_unitary(lambda, d)?);
        let d_dim = rat_u(dim_symmetric(lambda));
        rho_neq = &rho_neq + &block.mat.matmul(proj).scale(&(d_dim / m_dim.clone()));
        let k = kostka(lambda, mu)?;
        if k != 0 {
            rho_twirled = &rho_twirled + &proj.scale(&(rat_u(k) / m_dim));
        }
    }
    let inv_binom = rat_u(1) / rat_u(multinomial(mu));
    let sym_dim = rat_u(binomial(n as u64 + d as u64 - 1, n as u64));
    let rho_eq = iso.symmetric().scale(&(rat_u(1) / sym_dim));
    Ok(RhoStates {
        rho_neq: TensorOp::new(n, d, rho_neq.scale(&inv_binom))?,
        rho_neq_twirled: TensorOp::new(n, d, rho_twirled.scale(&inv_binom))?,
        rho_eq: TensorOp::new(n, d, rho_eq)?,
    })
}

/// Builds the twirled states for a promise `mu` on `n` registers of local
/// dimension `d`.
pub fn rho_states(mu: &Partition, n: u32, d: u32, budget: u128) -> Result<RhoStates> {
    let iso = Isotypics::build(n, d, budget)?;
    rho_states_with(&iso, mu)
}

/// Hilbert–Schmidt-orthogonal projection onto the span of the register
/// permutation operators — an exact stand-in for averaging over the
/// unitary group, that span being the commutant of the diagonal action.
///
/// The Gram system over the permutation operators is solved exactly. For
/// d < n the operators are linearly dependent; the system stays consistent
/// and any echelon solution yields the same (unique) projection.
pub fn commutant_projection(x: &TensorOp) -> Result<TensorOp> {
    let (n, d) = (x.n, x.d);
    let side = x.side();
    let perms = all_perms(n as usize);
    let maps: Vec<Vec<usize>> = perms.iter().map(|p| perm_index_map(p, n, d, side)).collect();

    // Gram[a][b] = Tr[psi(a)^T psi(b)] = d^{#cycles(a^{-1} b)}
    let gram = Matrix::from_fn(perms.len(), perms.len(), |a, b| {
        let comp = perms[a].inverse().compose(&perms[b]);
        rat_u((d as u64).pow(cycle_type(&comp).len() as u32))
    });
    // rhs[a] = Tr[psi(a)^T X]
    let rhs: Vec<Rat> = maps
        .iter()
        .map(|map| {
            let mut acc = rat_u(0);
            for (j, &i) in map.iter().enumerate() {
                let v = x.mat.at(i, j);
                if !v.is_zero() {
                    acc += v.clone();
                }
            }
            acc
        })
        .collect();
    let coeffs = solve_consistent(&gram, &rhs)?;

    let mut out = Mat::zeros(side, side);
    for (c, map) in coeffs.iter().zip(&maps) {
        if c.is_zero() {
            continue;
        }
        for (j, &i) in map.iter().enumerate() {
            *out.at_mut(i, j) += c.clone();
        }
    }
    TensorOp::new(n, d, out)
}

/// k-fold Kronecker power.
pub fn kron_power(m: &Mat, k: u32) -> Mat {
    let mut out = Mat::identity(1);
    for _ in 0..k {
        out = out.kron(m);
    }
    out
}

/// Hilbert–Schmidt inner product of two tensor operators.
pub fn hs(a: &TensorOp, b: &TensorOp) -> Result<Rat> {
    if (a.n, a.d) != (b.n, b.d) {
        return Err(Error::Shape(format!(
            "operators on different spaces: ({}, {}) vs ({}, {})",
            a.n, a.d, b.n, b.d
        )));
    }
    hs_inner(&a.mat, &b.mat)
}
