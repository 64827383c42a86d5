//! Enumeration in Q-space. With q(x) = 1 + Q_{N−1}x + ⋯ + Q₁x^{N−1} and
//! p_L = (λx − 1)q, the column is m_j = λQ_{N−j+1} − Q_{N−j} (Q₀ = 0,
//! Q_N = 1), and m ≥ 0 with m_N > 0 exactly when 0 < Q₁ ≤ λQ₂ ≤ ⋯ ≤ λ^{N−1}.

use super::EnumerateError;
use crate::exactalg::{strser, Int, IntPoly};
use crate::specimen::Specimen;
use serde::Serialize;

/// Default bound on the size of a family.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub lambda: u64,
    #[serde(rename = "N")]
    pub n: usize,
    pub include_gcd_violations: bool,
}

impl FamilySpec {
    pub fn new(lambda: u64, n: usize) -> Self {
        FamilySpec { lambda, n, include_gcd_violations: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumeratedSpecimen {
    #[serde(serialize_with = "strser::display")]
    pub specimen: Specimen,
    /// (Q₁, …, Q_{N−1}).
    pub q: Vec<u64>,
    /// Whether the support of m has gcd 1.
    pub gcd_ok: bool,
}

fn check(f: &FamilySpec) -> Result<(), EnumerateError> {
    if f.lambda < 2 || f.n < 1 {
        return Err(EnumerateError::InvalidFamily(format!("λ = {}, N = {}", f.lambda, f.n)));
    }
    Ok(())
}

/// m from (Q₁, …, Q_{N−1}).
fn column(lambda: u64, q: &[u64]) -> Result<Vec<u64>, EnumerateError> {
    let n = q.len() + 1;
    let at = |i: usize| if i == 0 { 0 } else if i == n { 1 } else { q[i - 1] };
    (1..=n)
        .map(|j| {
            lambda
                .checked_mul(at(n - j + 1))
                .and_then(|x| x.checked_sub(at(n - j)))
                .ok_or(EnumerateError::Overflow)
        })
        .collect()
}

/// (λx − 1) | p_L by exact division.
fn divides(lambda: u64, s: &Specimen) -> bool {
    let f = IntPoly::new(vec![-Int::from(1), Int::from(lambda)]);
    s.p_l().exact_div(&f).is_some()
}

pub fn enumerate_family(f: &FamilySpec) -> Result<Vec<EnumeratedSpecimen>, EnumerateError> {
    enumerate_family_with_cap(f, DEFAULT_BUDGET)
}

/// Output is in lexicographic order of (Q_{N−1}, …, Q₁). The cap bounds the
/// number of column vectors visited, violators included.
pub fn enumerate_family_with_cap(f: &FamilySpec, cap: usize) -> Result<Vec<EnumeratedSpecimen>, EnumerateError> {
    check(f)?;
    let n = f.n;
    let mut out = Vec::new();
    let mut visited = 0usize;
    // rev[k] = Q_{N−1−k}
    let mut rev: Vec<u64> = Vec::with_capacity(n - 1);
    fn walk(
        f: &FamilySpec,
        upper: u64,
        rev: &mut Vec<u64>,
        visited: &mut usize,
        cap: usize,
        out: &mut Vec<EnumeratedSpecimen>,
    ) -> Result<(), EnumerateError> {
        if rev.len() == f.n - 1 {
            *visited += 1;
            if *visited > cap {
                return Err(EnumerateError::BudgetExceeded { cap });
            }
            let q: Vec<u64> = rev.iter().rev().copied().collect();
            let m = column(f.lambda, &q)?;
            let s = Specimen::from_m_imprimitive(m).expect("m_N = λQ₁ > 0");
            assert!(divides(f.lambda, &s), "λx − 1 must divide p_L for {s}");
            let gcd_ok = s.is_primitive();
            if gcd_ok || f.include_gcd_violations {
                out.push(EnumeratedSpecimen { specimen: s, q, gcd_ok });
            }
            return Ok(());
        }
        for x in 1..=upper {
            rev.push(x);
            let next = f.lambda.checked_mul(x).ok_or(EnumerateError::Overflow)?;
            walk(f, next, rev, visited, cap, out)?;
            rev.pop();
        }
        Ok(())
    }
    walk(f, f.lambda, &mut rev, &mut visited, cap, &mut out)?;
    Ok(out)
}

/// Test oracle: every m with entries ≤ λᴺ, m_N ≥ 1 and Σ m_j λ^{N−j} = λᴺ,
/// in lexicographic order of m. Includes gcd violators.
pub fn brute_force_family(lambda: u64, n: usize) -> Vec<Specimen> {
    let top = lambda.pow(n as u32);
    let mut out = Vec::new();
    let mut m = vec![0u64; n];
    fn go(lambda: u64, n: usize, j: usize, rest: u64, top: u64, m: &mut Vec<u64>, out: &mut Vec<Specimen>) {
        if j == n {
            if rest == 0 && m[n - 1] >= 1 {
                out.push(Specimen::from_m_imprimitive(m.clone()).unwrap());
            }
            return;
        }
        let w = lambda.pow((n - 1 - j) as u32);
        for x in 0..=top.min(rest / w) {
            m[j] = x;
            go(lambda, n, j + 1, rest - x * w, top, m, out);
        }
        m[j] = 0;
    }
    go(lambda, n, 0, top, top, &mut m, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::perron;

    fn ms(v: &[EnumeratedSpecimen]) -> Vec<Vec<u64>> {
        v.iter().map(|e| e.specimen.m().to_vec()).collect()
    }

    fn all(lambda: u64, n: usize) -> Vec<EnumeratedSpecimen> {
        enumerate_family(&FamilySpec { lambda, n, include_gcd_violations: true }).unwrap()
    }

    #[test]
    fn small_lists() {
        assert_eq!(ms(&all(2, 2)), vec![vec![1, 2], vec![0, 4]]);
        assert_eq!(
            ms(&all(2, 3)),
            vec![vec![1, 1, 2], vec![1, 0, 4], vec![0, 3, 2], vec![0, 2, 4], vec![0, 1, 6], vec![0, 0, 8]]
        );
    }

    #[test]
    fn counts_at_two() {
        for (n, total, valid) in [(2, 2, 1), (3, 6, 5), (4, 26, 22)] {
            let a = all(2, n);
            assert_eq!(a.len(), total);
            assert_eq!(a.iter().filter(|e| e.gcd_ok).count(), valid);
            assert_eq!(enumerate_family(&FamilySpec::new(2, n)).unwrap().len(), valid);
        }
    }

    #[test]
    fn removed_positions_at_rank_four() {
        let a = all(2, 4);
        let bad: Vec<usize> = a.iter().enumerate().filter(|(_, e)| !e.gcd_ok).map(|(i, _)| i + 1).collect();
        assert_eq!(bad, vec![8, 12, 18, 26]);
    }

    #[test]
    fn matches_brute_force() {
        for lambda in 2..=4u64 {
            for n in 1..=4usize {
                if lambda.pow(n as u32) > 100 {
                    continue;
                }
                let mut got: Vec<Specimen> = all(lambda, n).into_iter().map(|e| e.specimen).collect();
                let want = brute_force_family(lambda, n);
                got.sort();
                let mut dedup = got.clone();
                dedup.dedup();
                assert_eq!(dedup.len(), got.len());
                let mut want_sorted = want.clone();
                want_sorted.sort();
                assert_eq!(got, want_sorted, "λ = {lambda}, N = {n}");
            }
        }
    }

    #[test]
    fn every_member_has_the_eigenvalue() {
        for n in 2..=4 {
            for e in enumerate_family(&FamilySpec::new(3, n)).unwrap() {
                assert_eq!(perron(&e.specimen).unwrap().lambda_int, Some(Int::from(3)));
            }
        }
    }

    #[test]
    fn budget() {
        assert_eq!(enumerate_family_with_cap(&FamilySpec::new(2, 4), 10), Err(EnumerateError::BudgetExceeded { cap: 10 }));
        assert!(matches!(enumerate_family(&FamilySpec::new(1, 3)), Err(EnumerateError::InvalidFamily(_))));
    }
}
