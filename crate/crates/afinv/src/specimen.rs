//! The input datum: the first column m of the companion incidence matrix J,
//! equivalently the weight multiset L in which j occurs m_j times.

use crate::exactalg::{Int, IntMatrix, IntPoly, Rat, RatMatrix};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Largest accepted matrix size.
pub const MAX_N: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecimenError {
    #[error("specimen must have at least one entry")]
    Empty,
    #[error("last entry m_N must be positive")]
    LastEntryZero,
    #[error("weights must be positive integers")]
    ZeroWeight,
    #[error("weights have common divisor {0}; normalize by the gcd first")]
    GcdNotOne(u64),
    #[error("N = {0} exceeds the supported maximum {MAX_N}")]
    TooLarge(usize),
    #[error("cannot parse specimen {0:?}: expected m=1,0,4 or L=1,2,4")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Specimen {
    m: Vec<u64>,
}

fn support_gcd(m: &[u64]) -> u64 {
    m.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .fold(0u64, |g, (j, _)| g.gcd(&(j as u64 + 1)))
}

impl Specimen {
    /// Validated construction from the first column.
    pub fn from_m(m: Vec<u64>) -> Result<Self, SpecimenError> {
        let s = Self::from_m_imprimitive(m)?;
        match support_gcd(&s.m) {
            1 => Ok(s),
            g => Err(SpecimenError::GcdNotOne(g)),
        }
    }

    /// Construction that skips the primitivity check, for enumerations that
    /// must also list the column vectors violating it.
    pub fn from_m_imprimitive(m: Vec<u64>) -> Result<Self, SpecimenError> {
        if m.is_empty() {
            return Err(SpecimenError::Empty);
        }
        if m.len() > MAX_N {
            return Err(SpecimenError::TooLarge(m.len()));
        }
        if *m.last().unwrap() == 0 {
            return Err(SpecimenError::LastEntryZero);
        }
        Ok(Specimen { m })
    }

    pub fn from_l(l: &[u64]) -> Result<Self, SpecimenError> {
        if l.is_empty() {
            return Err(SpecimenError::Empty);
        }
        if l.contains(&0) {
            return Err(SpecimenError::ZeroWeight);
        }
        let n = *l.iter().max().unwrap() as usize;
        if n > MAX_N {
            return Err(SpecimenError::TooLarge(n));
        }
        let mut m = vec![0u64; n];
        for &w in l {
            m[w as usize - 1] += 1;
        }
        Self::from_m(m)
    }

    /// Divides the weights by their gcd s and returns (specimen, s).
    pub fn normalize_by_gcd(l: &[u64]) -> Result<(Self, u64), SpecimenError> {
        if l.contains(&0) {
            return Err(SpecimenError::ZeroWeight);
        }
        let s = l.iter().fold(0u64, |g, &x| g.gcd(&x));
        if s == 0 {
            return Err(SpecimenError::Empty);
        }
        let scaled: Vec<u64> = l.iter().map(|&x| x / s).collect();
        Ok((Self::from_l(&scaled)?, s))
    }

    /// Weights multiplied by k: the first column spread to indices k, 2k, ….
    /// The result is imprimitive for k ≥ 2.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut m = vec![0u64; self.n() * k];
        for (j, &c) in self.m.iter().enumerate() {
            m[(j + 1) * k - 1] = c;
        }
        Specimen { m }
    }

    pub fn is_primitive(&self) -> bool {
        support_gcd(&self.m) == 1
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    /// Number of Cuntz generators, Σ m_j.
    pub fn d(&self) -> u64 {
        self.m.iter().sum()
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    /// m_j for 1 ≤ j ≤ N.
    pub fn mj(&self, j: usize) -> Int {
        Int::from(self.m[j - 1])
    }

    pub fn m_n(&self) -> Int {
        Int::from(*self.m.last().unwrap())
    }

    /// Sorted weight list.
    pub fn weights(&self) -> Vec<u64> {
        let mut l = Vec::new();
        for (j, &c) in self.m.iter().enumerate() {
            l.extend(std::iter::repeat_n(j as u64 + 1, c as usize));
        }
        l
    }

    /// Companion matrix: first column m, ones on the superdiagonal.
    pub fn matrix(&self) -> IntMatrix {
        let n = self.n();
        let mut j = IntMatrix::zeros(n, n);
        for i in 0..n {
            j.set(i, 0, Int::from(self.m[i]));
            if i + 1 < n {
                j.set(i, i + 1, Int::one());
            }
        }
        j
    }

    /// Exact J⁻¹: first row (0,…,0,1/m_N), ones on the subdiagonal, and
    /// −m_i/m_N added down the last column.
    pub fn inverse_matrix(&self) -> RatMatrix {
        let n = self.n();
        let mn = self.m_n();
        let mut inv = RatMatrix::zeros(n, n);
        inv.set(0, n - 1, Rat::new(Int::one(), mn.clone()));
        for i in 1..n {
            inv.set(i, i - 1, Rat::one());
            let v = inv.get(i, n - 1) - Rat::new(self.mj(i), mn.clone());
            inv.set(i, n - 1, v);
        }
        inv
    }

    /// tᴺ − m₁tᴺ⁻¹ − ⋯ − m_N.
    pub fn char_poly(&self) -> IntPoly {
        let n = self.n();
        let mut c = vec![Int::zero(); n + 1];
        c[n] = Int::one();
        for j in 1..=n {
            c[n - j] = -self.mj(j);
        }
        IntPoly::new(c)
    }

    /// Σ m_j xʲ − 1.
    pub fn p_l(&self) -> IntPoly {
        let mut c = vec![-Int::one()];
        c.extend(self.m.iter().map(|&x| Int::from(x)));
        IntPoly::new(c)
    }

    /// Whether some power Jᵏ with k ≤ N² is entrywise positive.
    pub fn has_positive_power(&self) -> bool {
        let n = self.n();
        // the 0/1 pattern keeps entries small
        let collapse = |a: &Int| if a.is_zero() { Int::zero() } else { Int::one() };
        let pattern = self.matrix().map(collapse);
        let mut p = pattern.clone();
        for _ in 0..n * n {
            if p.is_positive() {
                return true;
            }
            p = (&p * &pattern).map(collapse);
        }
        p.is_positive()
    }
}

impl fmt::Display for Specimen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.m.iter().map(|x| x.to_string()).collect();
        write!(f, "m={}", parts.join(","))
    }
}

fn parse_list(s: &str) -> Option<Vec<u64>> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    s.split(',').map(|t| t.trim().parse::<u64>().ok()).collect()
}

impl FromStr for Specimen {
    type Err = SpecimenError;

    /// Accepts `m=1,0,4`, `L=1,2,4`, or a bare column `1,0,4`.
    fn from_str(s: &str) -> Result<Self, SpecimenError> {
        let bad = || SpecimenError::Parse(s.to_string());
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("L=").or_else(|| t.strip_prefix("l=")) {
            Specimen::from_l(&parse_list(rest).ok_or_else(bad)?)
        } else {
            let rest = t.strip_prefix("m=").unwrap_or(t);
            Specimen::from_m(parse_list(rest).ok_or_else(bad)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use proptest::prelude::*;

    fn sp(m: &[u64]) -> Specimen {
        Specimen::from_m(m.to_vec()).unwrap()
    }

    #[test]
    fn from_weights() {
        assert_eq!(Specimen::from_l(&[2, 3]).unwrap(), sp(&[0, 1, 1]));
        assert_eq!(Specimen::from_l(&[1, 2, 4]).unwrap(), sp(&[1, 1, 0, 1]));
        assert_eq!(Specimen::from_l(&[1]).unwrap(), sp(&[1]));
        assert_eq!(Specimen::from_l(&[2, 4]), Err(SpecimenError::GcdNotOne(2)));
        assert_eq!(Specimen::from_l(&[0, 1]), Err(SpecimenError::ZeroWeight));
    }

    #[test]
    fn gcd_normalization() {
        let (s, k) = Specimen::normalize_by_gcd(&[2, 4, 6]).unwrap();
        assert_eq!((s.weights(), k), (vec![1, 2, 3], 2));
        let (s, k) = Specimen::normalize_by_gcd(&[2, 3]).unwrap();
        assert_eq!((s.weights(), k), (vec![2, 3], 1));
        let (s, k) = Specimen::normalize_by_gcd(&[4, 6, 10]).unwrap();
        assert_eq!((s.weights(), k), (vec![2, 3, 5], 2));
    }

    #[test]
    fn polynomials() {
        assert_eq!(sp(&[2, 4, 16]).char_poly(), IntPoly::from_i64(&[-16, -4, -2, 1]));
        assert_eq!(sp(&[2]).char_poly(), IntPoly::from_i64(&[-2, 1]));
        assert_eq!(
            sp(&[1, 2]).char_poly(),
            &IntPoly::from_i64(&[-2, 1]) * &IntPoly::from_i64(&[1, 1])
        );
        assert_eq!(sp(&[0, 1, 1]).p_l(), IntPoly::from_i64(&[-1, 0, 1, 1]));
        assert_eq!(sp(&[1, 2]).p_l(), IntPoly::from_i64(&[-1, 1, 2]));
        assert_eq!(sp(&[2]).p_l(), IntPoly::from_i64(&[-1, 2]));
    }

    #[test]
    fn inverse_small_cases() {
        let inv = sp(&[1, 2]).inverse_matrix();
        assert_eq!(
            inv,
            RatMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 2)], vec![rat(1, 1), rat(-1, 2)]])
        );
        assert_eq!(sp(&[2]).inverse_matrix(), RatMatrix::from_rows(vec![vec![rat(1, 2)]]));
    }

    #[test]
    fn parsing() {
        assert_eq!("m=1,0,4".parse::<Specimen>().unwrap(), sp(&[1, 0, 4]));
        assert_eq!("L=1,2,4".parse::<Specimen>().unwrap(), sp(&[1, 1, 0, 1]));
        assert_eq!("(0,3,2)".parse::<Specimen>().unwrap(), sp(&[0, 3, 2]));
        assert!(matches!("m=1,x".parse::<Specimen>(), Err(SpecimenError::Parse(_))));
        assert_eq!("m=1,0".parse::<Specimen>(), Err(SpecimenError::LastEntryZero));
        assert_eq!(sp(&[1, 0, 4]).to_string(), "m=1,0,4");
    }

    fn arb_m() -> impl Strategy<Value = Vec<u64>> {
        (1usize..6).prop_flat_map(|n| {
            (prop::collection::vec(0u64..5, n - 1), 1u64..6).prop_map(|(mut v, last)| {
                v.push(last);
                v
            })
        })
    }

    proptest! {
        #[test]
        fn determinant_formula(m in arb_m()) {
            let s = Specimen::from_m_imprimitive(m).unwrap();
            let sign = if s.n() % 2 == 1 { 1 } else { -1 };
            prop_assert_eq!(s.matrix().det(), s.m_n() * Int::from(sign));
        }

        #[test]
        fn inverse_is_inverse(m in arb_m()) {
            let s = Specimen::from_m_imprimitive(m).unwrap();
            prop_assert_eq!(&s.matrix().to_rat() * &s.inverse_matrix(), RatMatrix::identity(s.n()));
        }

        #[test]
        fn reciprocal_relation(m in arb_m()) {
            let s = Specimen::from_m_imprimitive(m).unwrap();
            prop_assert_eq!(s.char_poly().reverse(s.n()), -s.p_l());
        }

        #[test]
        fn weights_round_trip(m in arb_m()) {
            if let Ok(s) = Specimen::from_m(m) {
                prop_assert_eq!(Specimen::from_l(&s.weights()).unwrap(), s);
            }
        }

        #[test]
        fn primitivity_matches_positive_power(m in arb_m()) {
            let s = Specimen::from_m_imprimitive(m).unwrap();
            prop_assert_eq!(s.is_primitive(), s.has_positive_power());
        }
    }
}
