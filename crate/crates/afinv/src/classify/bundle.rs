//! The exported fingerprint of a specimen: every cheap isomorphism invariant
//! in one place.

use super::ClassifyError;
use crate::decomp::{
    divisible_subgroup_rank1_witness, scaling_degree_certificate, torsion_tensor, triangular_form,
    DecompError, Rank1Witness,
};
use crate::exactalg::algreal::AlgebraicRealView;
use crate::exactalg::{is_localized_unit, prime_support, strser, FieldElem, Int, Rat};
use crate::spectral::perron;
use crate::specimen::Specimen;
use num_traits::Signed;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Primes at which G₀ ⊗ ℤ_p is tabulated by default.
pub const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitFlag {
    /// 0 → ker τ → G → ℤ[1/λ] → 0 splits.
    Splits,
    NonSplit,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantBundle {
    #[serde(serialize_with = "strser::display")]
    pub specimen: Specimen,
    #[serde(rename = "N")]
    pub n: usize,
    /// Degree of the minimal polynomial p_a of a = 1/λ.
    #[serde(rename = "D")]
    pub d: usize,
    #[serde(rename = "m_N", serialize_with = "strser::int")]
    pub m_n: Int,
    #[serde(rename = "R_D", serialize_with = "strser::int")]
    pub r_d: Int,
    #[serde(rename = "Q_N_minus_D", serialize_with = "strser::int")]
    pub q_top: Int,
    #[serde(rename = "prim_m_N", serialize_with = "strser::int_set")]
    pub prim_m_n: BTreeSet<Int>,
    #[serde(rename = "prim_R_D", serialize_with = "strser::int_set")]
    pub prim_r_d: BTreeSet<Int>,
    #[serde(rename = "prim_Q_N_minus_D", serialize_with = "strser::int_set")]
    pub prim_q: BTreeSet<Int>,
    /// Exact text: the integer when λ is rational, otherwise its minimal
    /// polynomial and an isolating interval.
    pub lambda: String,
    pub lambda_detail: AlgebraicRealView,
    #[serde(serialize_with = "strser::opt_int")]
    pub lambda_integer: Option<Int>,
    /// ⟨α|v⟩, written in a = 1/λ when irrational.
    pub tau_v: String,
    #[serde(rename = "I_J", serialize_with = "strser::opt_int")]
    pub i_j: Option<Int>,
    pub ker_tau_rank: usize,
    #[serde(serialize_with = "strser::int")]
    pub det_j0: Int,
    /// dim G₀ ⊗ ℤ_p keyed by p.
    pub torsion: BTreeMap<u64, usize>,
    pub split: SplitFlag,
    pub scaling_certificate: Option<usize>,
    pub rank1: Option<Rank1Witness>,
    #[serde(skip)]
    pub tau: FieldElem,
}

impl InvariantBundle {
    pub fn lambda_eq_mn(&self) -> bool {
        self.lambda_integer.as_ref() == Some(&self.m_n)
    }

    pub fn tau_rational(&self) -> Option<Rat> {
        self.tau.to_rational()
    }

    pub fn prim_lambda(&self) -> Option<BTreeSet<Int>> {
        self.lambda_integer.as_ref().map(prime_support)
    }

    pub fn rank1_confirmed(&self) -> bool {
        matches!(self.rank1, Some(Rank1Witness::ConfirmedZinvLambda { .. }))
    }
}

pub fn bundle(s: &Specimen) -> Result<InvariantBundle, ClassifyError> {
    bundle_with_primes(s, &DEFAULT_PRIMES)
}

pub fn bundle_with_primes(s: &Specimen, primes: &[u64]) -> Result<InvariantBundle, ClassifyError> {
    let t = triangular_form(s)?;
    let pd = perron(s)?;
    let m_n = s.m_n();
    let r_d = t.r.last().cloned().expect("p_a has positive degree");
    let q_top = t.q_top();
    let prim_m_n = prime_support(&m_n);
    let prim_r_d = prime_support(&r_d);
    let prim_q = prime_support(&q_top);

    let union: BTreeSet<Int> = prim_r_d.union(&prim_q).cloned().collect();
    if union != prim_m_n || (&r_d * &q_top).abs() != m_n {
        return Err(DecompError::Inconsistent(format!(
            "|R_D·Q_(N−D)| = |{r_d}·{q_top}| does not reproduce m_N = {m_n}"
        ))
        .into());
    }
    if let Some(l) = &pd.lambda_int {
        if prime_support(l) != prim_r_d {
            return Err(DecompError::Inconsistent(format!("Prim(λ) ≠ Prim(R_D) for λ = {l}")).into());
        }
    }

    let mut torsion = BTreeMap::new();
    for &p in primes {
        let r = torsion_tensor(s, p)?;
        if let Some(dim) = r.dimension {
            torsion.insert(p, dim);
        }
    }

    let rational = pd.lambda_int.is_some();
    let split = if rational { split_test(s)? } else { SplitFlag::Unknown };
    let scaling_certificate = if rational { scaling_degree_certificate(s)? } else { None };
    let rank1 = if rational { Some(divisible_subgroup_rank1_witness(s)?) } else { None };
    let lambda_detail = pd.lambda.describe();
    let lambda = match &pd.lambda_int {
        Some(l) => l.to_string(),
        None => format!(
            "root of {} in ({}, {})",
            lambda_detail.minpoly, lambda_detail.lo, lambda_detail.hi
        ),
    };

    Ok(InvariantBundle {
        specimen: s.clone(),
        n: s.n(),
        d: t.d,
        m_n,
        r_d,
        q_top,
        prim_m_n,
        prim_r_d,
        prim_q,
        lambda,
        lambda_detail,
        lambda_integer: pd.lambda_int.clone(),
        tau_v: pd.tau_v.render("a"),
        i_j: pd.i_j.clone(),
        ker_tau_rank: t.m,
        det_j0: t.det_j0(),
        torsion,
        split,
        scaling_certificate,
        rank1,
        tau: pd.tau_v,
    })
}

/// Splitting of 0 → ker τ → G → ℤ[1/λ] → 0. Splits when τ(v) is a unit of
/// ℤ[1/λ]; does not split when τ(v) is not a unit and D_λ(G) = ℤ[1/λ]v is
/// certified (which includes Prim(m_N) = Prim(λ)).
pub fn split_test(s: &Specimen) -> Result<SplitFlag, ClassifyError> {
    let pd = perron(s)?;
    let lambda = pd.lambda_int.clone().ok_or(ClassifyError::LambdaIrrational)?;
    let tau = pd.tau_rational().expect("rational λ gives rational τ(v)");
    let primes = prime_support(&lambda);
    if is_localized_unit(&tau, &primes) {
        return Ok(SplitFlag::Splits);
    }
    Ok(match divisible_subgroup_rank1_witness(s)? {
        Rank1Witness::ConfirmedZinvLambda { .. } => SplitFlag::NonSplit,
        Rank1Witness::Unknown { .. } => SplitFlag::Unknown,
    })
}
