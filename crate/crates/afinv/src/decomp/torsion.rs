//! G₀ ⊗ ℤ_n for the kernel group G₀ = ∪ J₀⁻ᵏℤᴹ.

use super::triangular::triangular_form;
use super::DecompError;
use crate::exactalg::{strser, prime_support, Int, IntMatrix};
use crate::specimen::Specimen;
use num_integer::Integer;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub modulus: u64,
    pub prime: bool,
    /// Dimension over ℤ_p when the modulus is prime.
    pub dimension: Option<usize>,
    /// A class has a unique representative l(x) with M coefficients in [0, n)
    pub l_bound: u64,
    pub l_len: usize,
    /// together with digits in [0, gcd(n, Q_M)).
    #[serde(serialize_with = "strser::int")]
    pub digit_bound: Int,
}

fn is_prime(n: u64) -> bool {
    let n = Int::from(n);
    let ps = prime_support(&n);
    ps.len() == 1 && ps.contains(&n)
}

/// Degree of f mod p, counting a constant reduction as 0.
fn reduced_degree(f: &crate::exactalg::IntPoly, p: u64) -> usize {
    let r = f.reduce_mod(&Int::from(p)).expect("modulus ≥ 2");
    r.deg().unwrap_or(0)
}

pub fn torsion_tensor(s: &Specimen, n: u64) -> Result<TorsionReport, DecompError> {
    if n < 2 {
        return Err(crate::exactalg::ExactError::BadModulus.into());
    }
    let t = triangular_form(s)?;
    let prime = is_prime(n);
    let dimension = prime.then(|| if t.m == 0 { 0 } else { reduced_degree(&t.p0, n) });
    Ok(TorsionReport {
        modulus: n,
        prime,
        dimension,
        l_bound: n,
        l_len: t.m,
        digit_bound: Int::from(n).gcd(&t.q_top()),
    })
}

/// Stable rank of J₀ over ℤ_p, the dimension of the direct limit of ℤ_pᴹ
/// under J₀. Independent of the polynomial degree count.
pub fn stable_rank_mod_p(j0: &IntMatrix, p: u64) -> usize {
    let m = j0.nrows();
    if m == 0 {
        return 0;
    }
    let reduce = |a: &Int| a.mod_floor(&Int::from(p));
    let mut acc = IntMatrix::identity(m);
    let base = j0.map(reduce);
    for _ in 0..m {
        acc = (&acc * &base).map(reduce);
    }
    acc.rank_mod_p(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(m: &[u64]) -> Specimen {
        Specimen::from_m(m.to_vec()).unwrap()
    }

    #[test]
    fn table_values() {
        assert_eq!(torsion_tensor(&sp(&[1, 0, 4]), 2).unwrap().dimension, Some(1));
        assert_eq!(torsion_tensor(&sp(&[1, 1, 0, 4]), 2).unwrap().dimension, Some(2));
        assert_eq!(torsion_tensor(&sp(&[0, 0, 4, 8]), 2).unwrap().dimension, Some(0));
    }

    #[test]
    fn composite_modulus_bounds() {
        let r = torsion_tensor(&sp(&[1, 0, 4]), 6).unwrap();
        assert!(!r.prime);
        assert_eq!(r.dimension, None);
        assert_eq!(r.l_len, 2);
        // Q_M = −2
        assert_eq!(r.digit_bound, Int::from(2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn degree_matches_stable_rank(m in prop::collection::vec(0u64..5, 0..4), last in 1u64..9, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let mut m = m;
            m.push(last);
            if let Ok(s) = Specimen::from_m(m) {
                let t = triangular_form(&s).unwrap();
                let r = torsion_tensor(&s, p).unwrap();
                prop_assert_eq!(r.dimension, Some(stable_rank_mod_p(&t.j0, p)));
            }
        }
    }
}
