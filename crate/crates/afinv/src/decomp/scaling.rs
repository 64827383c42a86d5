//! Scaling degree of J with respect to m_N, and the rank-one description of
//! the λ-divisible subgroup D_λ(G) = ∩ₖ λᵏG.

use super::companion::Companion;
use super::DecompError;
use crate::exactalg::{prime_support, valuation, Int, IntMatrix, Rat, RatMatrix};
use crate::spectral::integral_lambda;
use crate::specimen::Specimen;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

/// Smallest n with m_{N−k} ≡ 0 (mod m_N) for 0 < k < n and
/// gcd(m_{N−n}, m_N) = 1; n = N when every m_{N−k} is divisible. None when
/// the pattern breaks first. Needs no information about λ.
pub(crate) fn certificate_pattern(s: &Specimen) -> Option<usize> {
    let nn = s.n();
    let mn = s.m_n();
    for n in 1..nn {
        let c = s.mj(nn - n);
        if c.gcd(&mn).is_one() {
            return Some(n);
        }
        if !(c % &mn).is_zero() {
            return None;
        }
    }
    Some(nn)
}

/// Returns `Ok(None)` for Unknown.
pub fn scaling_degree_certificate(s: &Specimen) -> Result<Option<usize>, DecompError> {
    integral_lambda(s).ok_or(DecompError::LambdaIrrational)?;
    Ok(certificate_pattern(s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Rank1Witness {
    /// D_λ(G) = ℤ[1/λ]·v; λᵏJ⁻ᵏ is integral for the recorded k.
    ConfirmedZinvLambda { certificate: usize, k: usize },
    Unknown { reason: String },
}

fn scaled_inverse_power_integral(s: &Specimen, lambda: &Int, k: usize) -> bool {
    let c = Companion::of(s);
    let n = s.n();
    let lk = Rat::from_integer(num_traits::pow(lambda.clone(), k));
    (0..n).all(|j| {
        let mut v = super::companion::unit(n, j);
        for _ in 0..k {
            v = c.apply_inv(&v);
        }
        v.iter().all(|x| (x * &lk).is_integer())
    })
}

pub fn divisible_subgroup_rank1_witness(s: &Specimen) -> Result<Rank1Witness, DecompError> {
    let lambda = integral_lambda(s).ok_or(DecompError::LambdaIrrational)?;
    let mn = s.m_n();
    let unknown = |r: &str| Ok(Rank1Witness::Unknown { reason: r.to_string() });
    if prime_support(&mn) != prime_support(&lambda) {
        return unknown("Prim(m_N) differs from Prim(λ)");
    }
    let Some(cert) = certificate_pattern(s) else {
        return unknown("no scaling-degree certificate");
    };
    let fits = prime_support(&lambda)
        .iter()
        .all(|p| cert as u32 * valuation(&lambda, p) <= valuation(&mn, p));
    if !fits {
        return unknown("certificate exceeds the valuation budget of m_N");
    }
    for i in 1..=4 {
        let k = cert * i;
        if scaled_inverse_power_integral(s, &lambda, k) {
            return Ok(Rank1Witness::ConfirmedZinvLambda { certificate: cert, k });
        }
    }
    unknown("λᵏJ⁻ᵏ not integral for the tested k")
}

/// λᵏ·J⁻ᵏ computed as a full matrix, for cross-checking.
pub fn scaled_inverse_power(s: &Specimen, lambda: &Int, k: u32) -> Option<IntMatrix> {
    let inv: RatMatrix = s.inverse_matrix();
    let p = inv.pow(k).scale(&Rat::from_integer(num_traits::pow(lambda.clone(), k as usize)));
    p.to_int()
}
