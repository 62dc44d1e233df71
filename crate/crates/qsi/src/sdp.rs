//! Closed-form dual witnesses for the optimal-measurement program and
//! exact feasibility / zero-gap certification.
//!
//! The primal program maximizes p Tr[P rho_eq] + (1-p) Tr[(I-P) rho_neq]
//! over POVM elements 0 <= P <= I; its dual minimizes Tr[Y] subject to
//! Y - p rho_eq >= 0 and Y - (1-p) rho_neq >= 0. Both closed-form optimal
//! solutions are constructed here and certified with exact arithmetic; no
//! numeric solver is involved anywhere.

use num_traits::Zero;
use serde::Serialize;

use crate::analytic::{p_star, RegionPoint};
use crate::error::{Error, Result};
use crate::exact::psd::{psd_certificate, PsdCertificate};
use crate::exact::scalar::{format_rat, rat_u, serialize_rat};
use crate::exact::hs_inner;
use crate::partitions::{multinomial, Partition};
use crate::tensor::{rho_states_with, Isotypics, RhoStates, TensorOp};
use crate::{Mat, Rat};

/// Which side of the threshold prior the witness was built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    AbovePStar,
    BelowPStar,
}

/// The measurement whose value the primal side reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimalTest {
    /// Accept on the fully symmetric subspace.
    Permutation,
    /// Never accept.
    Trivial,
}

/// One (mu, d) cell of the program: the twirled states plus the symmetric
/// projector, built once and reused across the prior grid.
pub struct SdpInstance {
    pub mu: Partition,
    pub n: u32,
    pub d: u32,
    pub states: RhoStates,
    sym: Mat,
}

impl SdpInstance {
    pub fn new(mu: &Partition, d: u32, budget: u128) -> Result<Self> {
        let iso = Isotypics::build(mu.size(), d, budget)?;
        Self::with_isotypics(&iso, mu)
    }

    /// Builds the cell from a prebuilt isotypic set (shared across cells of
    /// the same n and d in sweeps).
    pub fn with_isotypics(iso: &Isotypics, mu: &Partition) -> Result<Self> {
        if mu.part(1) == 0 {
            return Err(Error::Promise(format!(
                "{mu} has a single species; the unequal case needs mu_2 > 0"
            )));
        }
        let states = rho_states_with(iso, mu)?;
        Ok(SdpInstance {
            mu: mu.clone(),
            n: iso.n,
            d: iso.d,
            states,
            sym: iso.symmetric().clone(),
        })
    }

    /// The closed-form dual witness at prior `p`:
    /// (1-p) rho_neq + (p - (1-p)/binom) rho_eq at and above the threshold,
    /// (1-p) rho_neq below it. At the threshold both formulas coincide.
    pub fn dual_witness(&self, p: &Rat) -> Result<DualWitness> {
        if p < &rat_u(0) || p > &rat_u(1) {
            return Err(Error::Domain(format!("prior {p} outside [0,1]")));
        }
        let one_minus_p = rat_u(1) - p.clone();
        let star = p_star(&self.mu);
        let binom = rat_u(multinomial(&self.mu));
        let (regime, y) = if *p >= star {
            let coeff = p.clone() - one_minus_p.clone() / binom;
            let y = &self.states.rho_neq.mat.scale(&one_minus_p)
                + &self.states.rho_eq.mat.scale(&coeff);
            (Regime::AbovePStar, y)
        } else {
            (Regime::BelowPStar, self.states.rho_neq.mat.scale(&one_minus_p))
        };
        Ok(DualWitness {
            y: TensorOp::new(self.n, self.d, y)?,
            regime,
            p: p.clone(),
            mu: self.mu.clone(),
            d: self.d,
        })
    }

    /// Exact primal value p Tr[P rho_eq] + (1-p) Tr[(I-P) rho_neq] of the
    /// named measurement, evaluated by traces.
    pub fn primal_value(&self, p: &Rat, test: PrimalTest) -> Result<Rat> {
        if p < &rat_u(0) || p > &rat_u(1) {
            return Err(Error::Domain(format!("prior {p} outside [0,1]")));
        }
        let one_minus_p = rat_u(1) - p.clone();
        match test {
            PrimalTest::Permutation => {
                let complete = hs_inner(&self.sym, &self.states.rho_eq.mat)?;
                let leak = hs_inner(&self.sym, &self.states.rho_neq.mat)?;
                Ok(p.clone() * complete
                    + one_minus_p * (self.states.rho_neq.trace() - leak))
            }
            PrimalTest::Trivial => Ok(one_minus_p * self.states.rho_neq.trace()),
        }
    }

    /// Certifies a witness: both dual constraints factor PSD and the value
    /// Tr[Y] matches the primal value of the regime's measurement exactly.
    pub fn certify(&self, witness: &DualWitness) -> Result<Certification> {
        let p = &witness.p;
        let one_minus_p = rat_u(1) - p.clone();
        let m_eq = &witness.y.mat - &self.states.rho_eq.mat.scale(p);
        let m_neq = &witness.y.mat - &self.states.rho_neq.mat.scale(&one_minus_p);
        let cert_eq = psd_certificate(&m_eq)?;
        let cert_neq = psd_certificate(&m_neq)?;
        let test = match witness.regime {
            Regime::AbovePStar => PrimalTest::Permutation,
            Regime::BelowPStar => PrimalTest::Trivial,
        };
        let primal = self.primal_value(p, test)?;
        let dual = witness.y.trace();
        let gap = dual.clone() - primal.clone();
        let feasible = cert_eq.is_psd() && cert_neq.is_psd() && gap.is_zero();
        Ok(Certification { feasible, gap, dual_value: dual, primal_value: primal, cert_eq, cert_neq })
    }

    /// The mixture measurement (1-alpha) * symmetric + t * complement.
    pub fn mixture_measurement(&self, alpha: &Rat, t: &Rat) -> Mat {
        let side = self.sym.rows();
        let complement = &Mat::identity(side) - &self.sym;
        &self.sym.scale(&(rat_u(1) - alpha.clone())) + &complement.scale(t)
    }

    /// Exact (type I, type II) errors of an accept-measurement:
    /// alpha = 1 - Tr[P rho_eq], beta = Tr[P rho_neq].
    pub fn measurement_errors(&self, accept: &Mat) -> Result<RegionPoint> {
        let alpha = rat_u(1) - hs_inner(accept, &self.states.rho_eq.mat)?;
        let beta = hs_inner(accept, &self.states.rho_neq.mat)?;
        Ok(RegionPoint { alpha, beta })
    }
}

/// Closed-form dual witness for a prior and promise.
#[derive(Clone, Debug)]
pub struct DualWitness {
    pub y: TensorOp,
    pub regime: Regime,
    pub p: Rat,
    pub mu: Partition,
    pub d: u32,
}

/// Result of certifying a dual witness against the primal measurement.
#[derive(Clone, Debug)]
pub struct Certification {
    /// Both PSD constraints hold and the duality gap is exactly zero.
    pub feasible: bool,
    pub gap: Rat,
    pub dual_value: Rat,
    pub primal_value: Rat,
    pub cert_eq: PsdCertificate<Rat>,
    pub cert_neq: PsdCertificate<Rat>,
}

impl Certification {
    /// Flat serializable summary of one certification cell.
    pub fn record(&self, mu: &Partition, d: u32, p: &Rat, regime: Regime) -> CertRecord {
        CertRecord {
            mu: mu.clone(),
            d,
            p: p.clone(),
            regime,
            gap: self.gap.clone(),
            feasible: self.feasible,
            pivot_mins: [
                self.cert_eq.min_pivot().map(format_rat).unwrap_or_default(),
                self.cert_neq.min_pivot().map(format_rat).unwrap_or_default(),
            ],
        }
    }
}

/// Serializable certification summary.
#[derive(Clone, Debug, Serialize)]
pub struct CertRecord {
    pub mu: Partition,
    pub d: u32,
    #[serde(serialize_with = "serialize_rat")]
    pub p: Rat,
    pub regime: Regime,
    #[serde(serialize_with = "serialize_rat")]
    pub gap: Rat,
    pub feasible: bool,
    pub pivot_mins: [String; 2],
}

/// One-shot witness construction.
pub fn build_dual_witness(mu: &Partition, p: &Rat, d: u32, budget: u128) -> Result<DualWitness> {
    SdpInstance::new(mu, d, budget)?.dual_witness(p)
}

/// One-shot certification of the closed-form witness at a prior.
pub fn certify_cell(mu: &Partition, p: &Rat, d: u32, budget: u128) -> Result<Certification> {
    let inst = SdpInstance::new(mu, d, budget)?;
    let w = inst.dual_witness(p)?;
    inst.certify(&w)
}

/// One-shot exact primal value of a named measurement.
pub fn primal_value(
    mu: &Partition,
    p: &Rat,
    d: u32,
    test: PrimalTest,
    budget: u128,
) -> Result<Rat> {
    SdpInstance::new(mu, d, budget)?.primal_value(p, test)
}
