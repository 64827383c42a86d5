//! The class λ = m_N indexed by the integral eigenvector v = (1, v₂, …, v_{N−1}, 1).
//! Jv = λv reads m_i = λv_i − v_{i+1} for i < N and m_N = λ.

use super::family::DEFAULT_BUDGET;
use super::EnumerateError;
use crate::exactalg::{ipow, Int};
use crate::specimen::Specimen;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassMember {
    pub v: Vec<u64>,
    #[serde(serialize_with = "crate::exactalg::strser::display")]
    pub specimen: Specimen,
    /// I(J) = Σ v_i λ^{N−i}.
    #[serde(rename = "I_J", serialize_with = "crate::exactalg::strser::int")]
    pub i_j: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub first: ClassMember,
    pub second: ClassMember,
}

fn member(lambda: u64, v: Vec<u64>) -> Result<Option<ClassMember>, EnumerateError> {
    let n = v.len();
    let mut m = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let x = lambda.checked_mul(v[i]).and_then(|x| x.checked_sub(v[i + 1])).ok_or(EnumerateError::Overflow)?;
        m.push(x);
    }
    m.push(lambda);
    let Ok(s) = Specimen::from_m(m) else {
        return Ok(None);
    };
    let l = Int::from(lambda);
    let vi: Vec<Int> = v.iter().map(|&x| Int::from(x)).collect();
    let jv = s.matrix().mul_vec(&vi);
    assert!(jv.iter().zip(&vi).all(|(a, b)| *a == &l * b), "Jv ≠ λv for {s}");
    let i_j = vi.iter().enumerate().map(|(k, x)| x * ipow(&l, (n - 1 - k) as u32)).sum();
    Ok(Some(ClassMember { v, specimen: s, i_j }))
}

/// All valid specimens of rank N with λ = m_N, in lexicographic order of
/// (v₂, …, v_{N−1}), where 1 ≤ v_{i+1} ≤ λv_i.
pub fn lambda_eq_mn_family(lambda: u64, n: usize) -> Result<Vec<ClassMember>, EnumerateError> {
    if lambda < 2 || n < 1 {
        return Err(EnumerateError::InvalidFamily(format!("λ = {lambda}, N = {n}")));
    }
    if n == 1 {
        return Ok(member(lambda, vec![1])?.into_iter().collect());
    }
    let mut out = Vec::new();
    let mut v = vec![1u64];
    fn walk(lambda: u64, n: usize, v: &mut Vec<u64>, out: &mut Vec<ClassMember>) -> Result<(), EnumerateError> {
        if v.len() == n - 1 {
            v.push(1);
            let r = member(lambda, v.clone());
            v.pop();
            if let Some(c) = r? {
                out.push(c);
            }
            if out.len() > DEFAULT_BUDGET {
                return Err(EnumerateError::BudgetExceeded { cap: DEFAULT_BUDGET });
            }
            return Ok(());
        }
        let top = lambda.checked_mul(*v.last().unwrap()).ok_or(EnumerateError::Overflow)?;
        for x in 1..=top {
            v.push(x);
            walk(lambda, n, v, out)?;
            v.pop();
        }
        Ok(())
    }
    walk(lambda, n, &mut v, &mut out)?;
    Ok(out)
}

/// Pairs across the two families with the same I(J).
pub fn i_collisions(lambda1: u64, lambda2: u64, n: usize) -> Result<Vec<Collision>, EnumerateError> {
    let (a, b) = (lambda_eq_mn_family(lambda1, n)?, lambda_eq_mn_family(lambda2, n)?);
    let mut by_i: std::collections::BTreeMap<&Int, Vec<&ClassMember>> = Default::default();
    for y in &b {
        by_i.entry(&y.i_j).or_default().push(y);
    }
    let mut out = Vec::new();
    for x in &a {
        for y in by_i.get(&x.i_j).into_iter().flatten() {
            out.push(Collision { first: x.clone(), second: (*y).clone() });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::big;

    #[test]
    fn rank_two() {
        let f = lambda_eq_mn_family(2, 2).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].specimen.m(), &[1, 2]);
        assert_eq!(f[0].i_j, big(3));
    }

    #[test]
    fn rank_three_member() {
        let f = lambda_eq_mn_family(3, 3).unwrap();
        let c = f.iter().find(|c| c.v == vec![1, 2, 1]).unwrap();
        assert_eq!(c.specimen.m(), &[1, 5, 3]);
        assert_eq!(c.i_j, big(16));
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn collisions_48_54() {
        let c = i_collisions(48, 54, 3).unwrap();
        let pairs: Vec<(u64, u64)> = c.iter().map(|c| (c.first.v[1], c.second.v[1])).collect();
        assert_eq!(pairs, vec![(15, 2), (24, 10), (33, 18), (42, 26)]);
        assert_eq!(c[0].first.i_j, big(3025));
        assert!(c.iter().all(|c| c.first.i_j == c.second.i_j));
    }

    #[test]
    fn every_member_is_in_the_class() {
        for lambda in 2..=4 {
            for n in 2..=4 {
                for c in lambda_eq_mn_family(lambda, n).unwrap() {
                    assert_eq!(c.specimen.m_n(), Int::from(lambda));
                    let pd = crate::spectral::perron(&c.specimen).unwrap();
                    assert_eq!(pd.i_j, Some(c.i_j.clone()));
                }
            }
        }
    }
}
