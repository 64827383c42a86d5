//! Sufficient test for G₀ = ∪ J₀⁻ᵏℤᴹ to contain a copy of ℤ[1/d].

use super::DecompError;
use crate::exactalg::{factor_over_z, Int, IntMatrix, IntPoly, Rat, RatMatrix};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ZinvVerdict {
    /// A factor of the characteristic polynomial of d·J₀⁻¹ with unit constant term.
    Yes { factor: String },
    NoConclusion,
}

/// Characteristic polynomial det(tI − A) by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &RatMatrix) -> IntPoly {
    let n = a.nrows();
    assert!(a.is_square());
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::one();
    let mut m = RatMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a * &m;
        for i in 0..n {
            let v = next.get(i, i) + &c[n - k + 1];
            next.set(i, i, v);
        }
        m = next;
        let am = a * &m;
        let tr = (0..n).fold(Rat::zero(), |acc, i| acc + am.get(i, i));
        c[n - k] = -tr / Rat::from_integer(Int::from(k));
    }
    let ints: Vec<Int> = c
        .into_iter()
        .map(|x| {
            assert!(x.is_integer(), "integer matrix has integer characteristic polynomial");
            x.to_integer()
        })
        .collect();
    IntPoly::new(ints)
}

pub fn contains_z_inv_d(j0: &IntMatrix, d: &Int) -> Result<ZinvVerdict, DecompError> {
    assert!(d.is_positive(), "d must be positive");
    let inv = j0.to_rat().inverse()?;
    let e = inv.scale(&Rat::from_integer(d.clone()));
    let e = e.to_int().ok_or(DecompError::NonIntegralScaledInverse)?;
    let f = factor_over_z(&char_poly(&e.to_rat()))?;
    Ok(f
        .factors
        .iter()
        .find(|(g, _)| g.coeff(0).abs().is_one())
        .map(|(g, _)| ZinvVerdict::Yes { factor: g.to_string() })
        .unwrap_or(ZinvVerdict::NoConclusion))
}
