//! Element calculus in G = ∪ J⁻ⁿℤᴺ: membership level, canonical digit form,
//! trace and positivity.

use super::companion::{is_integral, unit, Companion};
use super::scaling::certificate_pattern;
use super::DecompError;
use crate::exactalg::{strser, prime_support, valuation, FieldElem, Int, Rat};
use crate::spectral::perron;
use crate::specimen::Specimen;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;

/// Iteration cap used when no scaling certificate bounds the level.
pub const DEFAULT_MEMBERSHIP_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Membership {
    Member { level: usize },
    /// `certified_by` names the argument that rules membership out.
    NotMember { certified_by: String },
}

impl Membership {
    pub fn level(&self) -> Option<usize> {
        match self {
            Membership::Member { level } => Some(*level),
            Membership::NotMember { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Digits {
    #[serde(serialize_with = "strser::ints")]
    pub l: Vec<Int>,
    /// i₁, …, i_n with 0 ≤ i_k < m_N.
    #[serde(serialize_with = "strser::ints")]
    pub i: Vec<Int>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub vec: Vec<Rat>,
    pub level: usize,
    pub digits: Digits,
}

impl GroupElement {
    pub fn new(s: &Specimen, g: &[Rat]) -> Result<Self, DecompError> {
        let digits = canonical_digits(s, g)?;
        Ok(GroupElement { vec: g.to_vec(), level: digits.i.len(), digits })
    }
}

fn common_denominator(g: &[Rat]) -> Int {
    g.iter().fold(Int::from(1), |acc, x| acc.lcm(x.denom()))
}

/// Upper bound on the level of any member whose denominators are `den`,
/// when the scaling certificate applies.
fn certified_cap(s: &Specimen, den: &Int) -> Option<usize> {
    let cert = certificate_pattern(s)?;
    let mn = s.m_n();
    let i = prime_support(den)
        .iter()
        .map(|p| {
            let need = valuation(den, p) as usize;
            let have = valuation(&mn, p) as usize;
            need.div_ceil(have)
        })
        .max()
        .unwrap_or(0);
    Some(cert * i + s.n() + 8)
}

pub fn membership(s: &Specimen, g: &[Rat]) -> Result<Membership, DecompError> {
    membership_with_cap(s, g, DEFAULT_MEMBERSHIP_CAP)
}

/// As [`membership`] with an explicit fallback cap for the uncertified case.
pub fn membership_with_cap(s: &Specimen, g: &[Rat], cap: usize) -> Result<Membership, DecompError> {
    assert_eq!(g.len(), s.n(), "vector length must equal N");
    let den = common_denominator(g);
    let allowed = prime_support(&s.m_n());
    if prime_support(&den).iter().any(|p| !allowed.contains(p)) {
        return Ok(Membership::NotMember { certified_by: "prime screen".into() });
    }
    let (limit, certified) = match certified_cap(s, &den) {
        Some(c) => (c, true),
        None => (cap, false),
    };
    let c = Companion::of(s);
    let mut y = g.to_vec();
    for n in 0..=limit {
        if is_integral(&y) {
            return Ok(Membership::Member { level: n });
        }
        y = c.apply(&y);
    }
    if certified {
        Ok(Membership::NotMember { certified_by: format!("scaling certificate, level bound {limit}") })
    } else {
        Err(DecompError::IterationCapExceeded { cap: limit })
    }
}

fn level_of(s: &Specimen, g: &[Rat]) -> Result<usize, DecompError> {
    membership(s, g)?.level().ok_or(DecompError::NotMember)
}

/// Unique (l, i₁…i_n) with g = l + Σ i_k J⁻ᵏe_N, found in ℤ[x]/(p_L) by
/// reducing the representative xⁿ·h(x), h = Jⁿg, from its top coefficient down.
pub fn canonical_digits(s: &Specimen, g: &[Rat]) -> Result<Digits, DecompError> {
    let n = level_of(s, g)?;
    let nn = s.n();
    let c = Companion::of(s);
    let mut h = g.to_vec();
    for _ in 0..n {
        h = c.apply(&h);
    }
    // coefficients of xⁿ·h(x), low to high
    let mut p = vec![Int::zero(); n + nn];
    for (j, x) in h.iter().enumerate() {
        p[n + j] = x.to_integer();
    }
    let mn = s.m_n();
    let m = s.m();
    for t in (nn..n + nn).rev() {
        let coef = p[t].clone();
        let i = coef.mod_floor(&mn);
        let q = (&coef - &i) / &mn;
        if q.is_zero() {
            continue;
        }
        // subtract q·x^{t−N}·p_L
        let base = t - nn;
        p[base] += &q;
        for (j, &mj) in m.iter().enumerate() {
            p[base + j + 1] -= &q * Int::from(mj);
        }
        debug_assert_eq!(p[t], i);
    }
    Ok(Digits { l: p[..nn].to_vec(), i: p[nn..].to_vec() })
}

pub fn reconstruct(s: &Specimen, d: &Digits) -> Vec<Rat> {
    let c = Companion::of(s);
    let mut out: Vec<Rat> = d.l.iter().map(|x| Rat::from_integer(x.clone())).collect();
    let mut basis = unit(s.n(), s.n() - 1);
    for ik in &d.i {
        basis = c.apply_inv(&basis);
        let ik = Rat::from_integer(ik.clone());
        for (o, b) in out.iter_mut().zip(&basis) {
            *o += &ik * b;
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Positivity {
    pub tau: FieldElem,
    pub sign: Ordering,
    /// g lies in the positive cone {τ > 0} ∪ {0}.
    pub positive: bool,
}

pub fn trace_and_positivity(s: &Specimen, g: &[Rat]) -> Result<Positivity, DecompError> {
    level_of(s, g)?;
    let d = perron(s)?;
    let mut tau = d.field.elem(crate::exactalg::RatPoly::zero());
    for (a, x) in d.alpha.iter().zip(g) {
        tau = &tau + &a.scale(x);
    }
    let sign = tau.sign();
    let positive = sign == Ordering::Greater || g.iter().all(|x| x.is_zero());
    Ok(Positivity { tau, sign, positive })
}

/// Digits by peeling the last coordinate: i = y_N mod m_N, y ← J⁻¹(y − i·e_N).
/// Independent of the polynomial reduction; used as a test oracle.
pub fn digits_by_peeling(s: &Specimen, g: &[Rat]) -> Result<Digits, DecompError> {
    let n = level_of(s, g)?;
    let c = Companion::of(s);
    let mut y = g.to_vec();
    for _ in 0..n {
        y = c.apply(&y);
    }
    let mn = Rat::from_integer(s.m_n());
    let mut rev = Vec::with_capacity(n);
    let last = s.n() - 1;
    for _ in 0..n {
        let i = y[last].to_integer().mod_floor(mn.numer());
        y[last] -= Rat::from_integer(i.clone());
        y = c.apply_inv(&y);
        debug_assert!(is_integral(&y));
        rev.push(i);
    }
    rev.reverse();
    debug_assert!(rev.iter().all(|x| !x.is_negative()));
    Ok(Digits { l: y.iter().map(|x| x.to_integer()).collect(), i: rev })
}

use crate::exactalg::numfield::FieldHandle;
