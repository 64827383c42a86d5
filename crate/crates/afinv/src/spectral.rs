//! Perron–Frobenius data of J: λ, a = 1/λ, the left eigenvector
//! α = (1, a, …, a^{N−1}), the right eigenvector v with v₁ = 1, the pairing
//! τ(v) = ⟨α|v⟩ and, when λ = m_N, the integer I(J) = Σ v_i λ^{N−i}.
//!
//! All values live in the number field ℚ(a); for rational λ that field is ℚ.

use crate::exactalg::numfield::FieldHandle;
use crate::exactalg::{
    divisors, isolate_positive_root, AlgebraicReal, ExactError, FieldElem, Int,
    NumberField, Rat, RatPoly,
};
use crate::specimen::Specimen;
use num_traits::{One, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("I(J) is defined only when λ = m_N")]
    NotInClass,
}

#[derive(Debug, Clone)]
pub struct PerronData {
    pub n: usize,
    pub lambda: AlgebraicReal,
    pub a: AlgebraicReal,
    /// ℚ(a), with generator a.
    pub field: Arc<NumberField>,
    /// λ as an integer when it is rational.
    pub lambda_int: Option<Int>,
    pub alpha: Vec<FieldElem>,
    pub v: Vec<FieldElem>,
    pub tau_v: FieldElem,
    pub i_j: Option<Int>,
}

impl PerronData {
    pub fn lambda_elem(&self) -> FieldElem {
        self.field.generator().inv().expect("a is nonzero")
    }

    /// v as integers when λ is rational.
    pub fn v_int(&self) -> Option<Vec<Int>> {
        self.v.iter().map(|x| x.to_rational().map(|r| r.to_integer())).collect()
    }

    pub fn tau_rational(&self) -> Option<Rat> {
        self.tau_v.to_rational()
    }

    /// β = ln λ, for display only.
    pub fn beta(&self) -> f64 {
        self.lambda.to_f64().ln()
    }
}

/// The integral Perron–Frobenius eigenvalue, if λ is rational. A rational root
/// of the monic characteristic polynomial is an integer dividing m_N, and the
/// only positive root is λ.
pub fn integral_lambda(s: &Specimen) -> Option<Int> {
    let cp = s.char_poly();
    match divisors(&s.m_n()) {
        Some(ds) => ds.into_iter().find(|d| cp.eval_rat(&Rat::from_integer(d.clone())).is_zero()),
        None => {
            let a = isolate_positive_root(&s.p_l()).ok()?;
            let l = a.rational()?.recip();
            l.is_integer().then(|| l.to_integer())
        }
    }
}

pub fn perron(s: &Specimen) -> Result<PerronData, SpectralError> {
    let n = s.n();
    let lambda_int = integral_lambda(s);
    let a = match &lambda_int {
        Some(l) => AlgebraicReal::from_rational(Rat::new(Int::one(), l.clone())),
        None => isolate_positive_root(&s.p_l())?,
    };
    let lambda = a.recip();
    let field = NumberField::new(a.clone());
    let ae = field.generator();
    let le = ae.inv().expect("a is nonzero");

    let mut alpha = Vec::with_capacity(n);
    let mut p = field.rat(Rat::one());
    for _ in 0..n {
        alpha.push(p.clone());
        p = &p * &ae;
    }

    let mut v = Vec::with_capacity(n);
    v.push(field.rat(Rat::one()));
    for i in 1..n {
        let next = &(&le * &v[i - 1]) - &field.rat(Rat::from_integer(s.mj(i)));
        v.push(next);
    }

    let tau_v = alpha.iter().zip(&v).fold(field.rat(Rat::zero()), |acc, (x, y)| &acc + &(x * y));

    let i_j = match &lambda_int {
        Some(l) if *l == s.m_n() => Some(i_from_v(&v, l)),
        _ => None,
    };

    let data = PerronData { n, lambda, a, field, lambda_int, alpha, v, tau_v, i_j };
    debug_assert!(check_eigen_identities(s, &data));
    Ok(data)
}

fn i_from_v(v: &[FieldElem], lambda: &Int) -> Int {
    let n = v.len();
    let mut acc = Int::zero();
    for (i, x) in v.iter().enumerate() {
        let vi = x.to_rational().expect("rational eigenvector").to_integer();
        acc += vi * num_traits::pow(lambda.clone(), n - 1 - i);
    }
    acc
}

/// αJ = λα, Jv = λv, and τ(v) = a·p_L′(a).
pub fn check_eigen_identities(s: &Specimen, d: &PerronData) -> bool {
    let n = s.n();
    let k = &d.field;
    let le = d.lambda_elem();
    let zero = k.rat(Rat::zero());
    let entry = |i: usize, j: usize| k.rat(Rat::from_integer(s.matrix().get(i, j).clone()));
    let j = s.matrix();
    for col in 0..n {
        let mut acc = zero.clone();
        for row in 0..n {
            if !j.get(row, col).is_zero() {
                acc = &acc + &(&d.alpha[row] * &entry(row, col));
            }
        }
        if acc != &le * &d.alpha[col] {
            return false;
        }
    }
    for row in 0..n {
        let mut acc = zero.clone();
        for col in 0..n {
            if !j.get(row, col).is_zero() {
                acc = &acc + &(&entry(row, col) * &d.v[col]);
            }
        }
        if acc != &le * &d.v[row] {
            return false;
        }
    }
    let dp = s.p_l().derivative().to_rat();
    let via_derivative = &k.generator() * &k.elem(dp);
    d.v[0].is_one() && via_derivative == d.tau_v
}

pub fn tau_v(s: &Specimen) -> Result<FieldElem, SpectralError> {
    Ok(perron(s)?.tau_v)
}

/// a·p_L′(a) computed without the eigenvector.
pub fn tau_via_derivative(s: &Specimen) -> Result<FieldElem, SpectralError> {
    let d = perron(s)?;
    let dp: RatPoly = s.p_l().derivative().to_rat();
    Ok(&d.field.generator() * &d.field.elem(dp))
}

pub fn i_invariant(s: &Specimen) -> Result<Int, SpectralError> {
    perron(s)?.i_j.ok_or(SpectralError::NotInClass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn sp(m: &[u64]) -> Specimen {
        Specimen::from_m(m.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn rational_examples() {
        let d = perron(&sp(&[0, 3, 2])).unwrap();
        assert_eq!(d.lambda_int, Some(Int::from(2)));
        assert_eq!(d.v_int().unwrap(), ints(&[1, 2, 1]));
        assert_eq!(d.tau_rational(), Some(rat(9, 4)));
        let d = perron(&sp(&[0, 15, 4])).unwrap();
        assert_eq!(d.v_int().unwrap(), ints(&[1, 4, 1]));
        assert_eq!(d.tau_rational(), Some(rat(33, 16)));
    }

    #[test]
    fn golden_ratio_case() {
        let d = perron(&sp(&[1, 1])).unwrap();
        assert!(d.lambda_int.is_none());
        assert_eq!(d.lambda.minpoly(), &crate::exactalg::IntPoly::from_i64(&[-1, -1, 1]));
        assert!((d.lambda.to_f64() - 1.618033988749895).abs() < 1e-12);
        assert!(check_eigen_identities(&sp(&[1, 1]), &d));
    }

    #[test]
    fn tau_table_values() {
        assert_eq!(tau_v(&sp(&[1, 0, 3, 2])).unwrap().to_rational(), Some(rat(17, 8)));
        assert_eq!(tau_v(&sp(&[0, 3, 1, 2])).unwrap().to_rational(), Some(rat(19, 8)));
    }

    #[test]
    fn i_invariant_values() {
        assert_eq!(i_invariant(&sp(&[1, 1, 2])).unwrap(), Int::from(7));
        assert_eq!(i_invariant(&sp(&[0, 3, 2])).unwrap(), Int::from(9));
        assert_eq!(i_invariant(&sp(&[33, 719, 48])).unwrap(), Int::from(3025));
        assert_eq!(i_invariant(&sp(&[1, 0, 4])), Err(SpectralError::NotInClass));
    }

    fn arb_specimen() -> impl Strategy<Value = Specimen> {
        (1usize..5)
            .prop_flat_map(|n| {
                (prop::collection::vec(0u64..4, n - 1), 1u64..5).prop_map(|(mut v, last)| {
                    v.push(last);
                    v
                })
            })
            .prop_filter_map("primitive", |m| Specimen::from_m(m).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn identities_hold(s in arb_specimen()) {
            let d = perron(&s).unwrap();
            prop_assert!(check_eigen_identities(&s, &d));
            prop_assert_eq!(tau_via_derivative(&s).unwrap(), d.tau_v.clone());
            if d.lambda_int.as_ref() == Some(&s.m_n()) {
                let i = d.i_j.clone().unwrap();
                prop_assert!(i > Int::zero());
                prop_assert!(i.gcd(&s.m_n()).is_one());
                let lam = Rat::from_integer(s.m_n());
                let expect = num_traits::pow(lam, s.n() - 1) * d.tau_rational().unwrap();
                prop_assert_eq!(Rat::from_integer(i), expect);
            }
        }

        #[test]
        fn inflation_scales_tau(s in arb_specimen(), k in 2usize..4) {
            prop_assume!(s.n() * k <= 9);
            let t = perron(&s).unwrap().tau_v;
            let ti = perron(&s.inflate(k)).unwrap().tau_v;
            // the inflated generator a′ satisfies a′ᵏ = a, so τ(v) lifts by x ↦ xᵏ
            let mut lifted = vec![Rat::zero(); k * t.poly().coeffs().len().max(1)];
            for (i, c) in t.poly().coeffs().iter().enumerate() {
                lifted[k * i] = c.clone();
            }
            let lifted = ti.field().elem(RatPoly::new(lifted));
            prop_assert_eq!(ti, lifted.scale(&Rat::from_integer(Int::from(k))));
        }
    }
}
