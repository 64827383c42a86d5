//! Checking an explicit isomorphism witness.
//!
//! A matrix Λ ∈ GL(N, ℚ) implements a unital order isomorphism G → G′ when
//! α′Λ = α, Λe₁ = e₁, every ΛJ⁻ⁱ maps ℤᴺ into G′ and every Λ⁻¹J′⁻ⁱ maps ℤᴺ
//! into G. The last two conditions quantify over all i, so a check to depth k
//! certifies them only for i ≤ k.

use super::lambda_mn::{class_data, eta_numerators, eta_values, ClassData};
use super::verdict::IsomorphismWitness;
use super::ClassifyError;
use crate::decomp::{membership, DecompError, Membership};
use crate::exactalg::numfield::FieldHandle;
use crate::exactalg::{prime_support, FieldElem, Int, IntMatrix, Rat, RatMatrix};
use crate::spectral::perron;
use crate::specimen::Specimen;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub const DEFAULT_WITNESS_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WitnessCheck {
    /// All conditions hold; the integrality conditions were checked for i ≤ depth.
    Verified { depth: usize },
    Refuted { condition: String },
    /// A membership query hit its iteration cap.
    Undetermined { condition: String },
}

impl WitnessCheck {
    pub fn is_verified(&self) -> bool {
        matches!(self, WitnessCheck::Verified { .. })
    }
}

fn refuted(c: impl Into<String>) -> WitnessCheck {
    WitnessCheck::Refuted { condition: c.into() }
}

/// Λ from (A, η): Λe₁ = e₁ and Λe_j = (0, Ae_j) + η(e_j)v′ for j ≥ 2.
pub fn lambda_from_a_eta(a: &IntMatrix, eta: &[Rat], v_prime: &[Int]) -> RatMatrix {
    let n = a.nrows() + 1;
    let mut l = RatMatrix::zeros(n, n);
    l.set(0, 0, Rat::one());
    for j in 1..n {
        for i in 0..n {
            let mut x = &eta[j - 1] * Rat::from_integer(v_prime[i].clone());
            if i >= 1 {
                x += Rat::from_integer(a.get(i - 1, j - 1).clone());
            }
            l.set(i, j, x);
        }
    }
    l
}

/// Multiplies the row vector α′ (over the field of J′) by Λ.
fn row_times(alpha: &[FieldElem], l: &RatMatrix) -> Vec<FieldElem> {
    let k = alpha[0].field().clone();
    (0..l.ncols())
        .map(|j| {
            alpha.iter().enumerate().fold(k.rat(Rat::zero()), |acc, (i, a)| &acc + &a.scale(l.get(i, j)))
        })
        .collect()
}

/// Columns of M·(J⁻ⁱ) lie in the target group for i = 0..=depth.
fn columns_in(
    m: &RatMatrix,
    src: &Specimen,
    dst: &Specimen,
    depth: usize,
    label: &str,
) -> Result<Option<WitnessCheck>, ClassifyError> {
    let inv = src.inverse_matrix();
    let mut cur = m.clone();
    for i in 0..=depth {
        for j in 0..cur.ncols() {
            match membership(dst, &cur.col(j)) {
                Ok(Membership::Member { .. }) => {}
                Ok(Membership::NotMember { certified_by }) => {
                    return Ok(Some(refuted(format!("{label}: column {} at i = {i} is not in the group ({certified_by})", j + 1))));
                }
                Err(DecompError::IterationCapExceeded { cap }) => {
                    return Ok(Some(WitnessCheck::Undetermined {
                        condition: format!("{label}: column {} at i = {i} undecided after {cap} steps", j + 1),
                    }));
                }
                Err(e) => return Err(e.into()),
            }
        }
        cur = &cur * &inv;
    }
    Ok(None)
}

fn check_lambda(s1: &Specimen, s2: &Specimen, l: &RatMatrix, depth: usize) -> Result<WitnessCheck, ClassifyError> {
    let n = s1.n();
    if l.nrows() != n || l.ncols() != n {
        return Err(ClassifyError::ShapeMismatch(format!("Λ is {}×{}, expected {n}×{n}", l.nrows(), l.ncols())));
    }
    let Ok(l_inv) = l.inverse() else {
        return Ok(refuted("Λ is invertible"));
    };
    let (p1, p2) = (perron(s1)?, perron(s2)?);
    if !p1.field.same_as(&p2.field) && !(p1.lambda_int.is_some() && p2.lambda_int.is_some()) {
        return Ok(WitnessCheck::Undetermined {
            condition: "α′Λ = α: the two trace fields are presented differently".into(),
        });
    }
    let lhs = row_times(&p2.alpha, l);
    let same = lhs.iter().zip(&p1.alpha).all(|(x, y)| match (x.to_rational(), y.to_rational()) {
        (Some(a), Some(b)) => a == b,
        _ => x == y,
    });
    if !same {
        return Ok(refuted("α′Λ = α"));
    }
    let e1 = l.col(0);
    if !e1.iter().enumerate().all(|(i, x)| if i == 0 { x.is_one() } else { x.is_zero() }) {
        return Ok(refuted("Λe₁ = e₁"));
    }
    if let Some(w) = columns_in(l, s1, s2, depth, "ΛJ⁻ⁱℤᴺ ⊆ G′")? {
        return Ok(w);
    }
    if let Some(w) = columns_in(&l_inv, s2, s1, depth, "Λ⁻¹J′⁻ⁱℤᴺ ⊆ G")? {
        return Ok(w);
    }
    Ok(WitnessCheck::Verified { depth })
}

fn class_hypotheses(c1: &ClassData, c2: &ClassData) -> Option<String> {
    if c1.n != c2.n {
        return Some("N = N′".into());
    }
    if prime_support(&c1.lambda) != prime_support(&c2.lambda) {
        return Some("Prim(λ) = Prim(λ′)".into());
    }
    (c1.i != c2.i).then(|| "I(J) = I(J′)".into())
}

fn check_a_eta(
    s1: &Specimen,
    s2: &Specimen,
    a: &IntMatrix,
    eta: &[Rat],
    depth: usize,
) -> Result<WitnessCheck, ClassifyError> {
    let n = s1.n();
    if n < 2 || a.nrows() != n - 1 || a.ncols() != n - 1 || (!eta.is_empty() && eta.len() != n - 1) {
        return Err(ClassifyError::ShapeMismatch(format!(
            "A is {}×{} and η has length {}, expected {}×{} and {}",
            a.nrows(),
            a.ncols(),
            eta.len(),
            n - 1,
            n - 1,
            n - 1
        )));
    }
    let (c1, c2) = match (class_data(s1), class_data(s2)) {
        (Ok(c1), Ok(c2)) => (c1, c2),
        _ => return Ok(refuted("both specimens satisfy λ = m_N")),
    };
    if let Some(h) = class_hypotheses(&c1, &c2) {
        return Ok(refuted(h));
    }
    if !a.det().abs().is_one() {
        return Ok(refuted("A ∈ GL(N−1, ℤ)"));
    }
    let (vb, vb2) = (c1.v_bar(), c2.v_bar());
    if a.mul_vec(&vb) != vb2 {
        return Ok(refuted("A v̄ = v̄′"));
    }
    for (k, num) in eta_numerators(&c1, &c2, a).iter().enumerate() {
        let r = num.mod_floor(&c1.i);
        if !r.is_zero() {
            return Ok(refuted(format!(
                "η(e_{}) ∈ ℤ[1/λ]: congruence fails with residue {r} mod I = {}",
                k + 2,
                c1.i
            )));
        }
    }
    let computed = eta_values(&c1, &c2, a);
    if !eta.is_empty() && eta != computed.as_slice() {
        return Ok(refuted("trace compatibility ⟨β|x⟩ = ⟨β′|Ax⟩ + η(x)τ(v′)"));
    }
    let xi = Rat::new(
        num_traits::pow(c2.lambda.clone(), n - 1),
        num_traits::pow(c1.lambda.clone(), n - 1),
    );
    let eta_vbar: Rat = computed.iter().zip(&vb).map(|(e, x)| e * Rat::from_integer(x.clone())).sum();
    if eta_vbar != xi - Rat::one() {
        return Ok(refuted("η(v̄) = (λ′/λ)^(N−1) − 1"));
    }
    let l = lambda_from_a_eta(a, &computed, &c2.v);
    check_lambda(s1, s2, &l, depth)
}

pub fn check_witness(
    s1: &Specimen,
    s2: &Specimen,
    w: &IsomorphismWitness,
    depth: usize,
) -> Result<WitnessCheck, ClassifyError> {
    if s1.n() != s2.n() {
        return Err(ClassifyError::ShapeMismatch(format!("N = {} vs N′ = {}", s1.n(), s2.n())));
    }
    match w {
        IsomorphismWitness::Lambda { lambda } => check_lambda(s1, s2, lambda, depth),
        IsomorphismWitness::AEta { a, eta, .. } => check_a_eta(s1, s2, a, eta, depth),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::lambda_mn::{n3_specimen, n3_witness_c, same_lambda_witness};
    use crate::exactalg::{big, rat};

    fn sp(m: &[u64]) -> Specimen {
        Specimen::from_m(m.to_vec()).unwrap()
    }

    fn int_lambda(rows: &[&[i64]]) -> IsomorphismWitness {
        IsomorphismWitness::Lambda { lambda: IntMatrix::from_i64(rows).to_rat() }
    }

    #[test]
    fn four_step_example_lambda() {
        let (s1, s2) = (sp(&[1, 2, 11, 3]), sp(&[0, 8, 2, 3]));
        let w = int_lambda(&[&[1, 0, 0, 0], &[0, 1, 0, 1], &[0, 0, 1, -3], &[0, 0, 0, 1]]);
        assert_eq!(check_witness(&s1, &s2, &w, 6).unwrap(), WitnessCheck::Verified { depth: 6 });
        let IsomorphismWitness::AEta { a, eta, .. } = same_lambda_witness(&s1, &s2).unwrap() else { panic!() };
        let built = lambda_from_a_eta(&a, &eta, &class_data(&s2).unwrap().v);
        assert_eq!(IsomorphismWitness::Lambda { lambda: built }, w);
    }

    #[test]
    fn identity_on_itself() {
        for m in [&[0u64, 3, 2][..], &[1, 0, 4], &[1, 1], &[1, 1, 0, 4]] {
            let s = sp(m);
            let w = IsomorphismWitness::Lambda { lambda: RatMatrix::identity(s.n()) };
            assert!(check_witness(&s, &s, &w, DEFAULT_WITNESS_DEPTH).unwrap().is_verified(), "{s}");
        }
    }

    #[test]
    fn perturbed_c_is_refuted() {
        let (s1, s2) = (n3_specimen(48, 15).unwrap(), n3_specimen(54, 2).unwrap());
        let (c, a) = n3_witness_c(&s1, &s2).unwrap().unwrap();
        let w = IsomorphismWitness::AEta { a, eta: vec![], c: Some(c.clone()) };
        assert!(check_witness(&s1, &s2, &w, 4).unwrap().is_verified());
        let c: Int = c + 1;
        let (v2, v2p) = (big(15), big(2));
        let a = IntMatrix::from_rows(vec![
            vec![&c * &v2p + 1, &v2p - &c * &v2 * &v2p - &v2],
            vec![c.clone(), Int::one() - &c * &v2],
        ]);
        let w = IsomorphismWitness::AEta { a, eta: vec![], c: Some(c) };
        match check_witness(&s1, &s2, &w, 4).unwrap() {
            WitnessCheck::Refuted { condition } => assert!(condition.contains("congruence"), "{condition}"),
            r => panic!("expected refutation, got {r:?}"),
        }
    }

    #[test]
    fn wrong_trace_is_refuted() {
        let (s1, s2) = (sp(&[1, 2, 11, 3]), sp(&[0, 8, 2, 3]));
        let w = int_lambda(&[&[1, 0, 0, 0], &[0, 1, 0, 2], &[0, 0, 1, -3], &[0, 0, 0, 1]]);
        assert_eq!(check_witness(&s1, &s2, &w, 3).unwrap(), refuted("α′Λ = α"));
    }

    #[test]
    fn shape_errors() {
        let s = sp(&[0, 3, 2]);
        let w = IsomorphismWitness::Lambda { lambda: RatMatrix::identity(2) };
        assert!(matches!(check_witness(&s, &s, &w, 2), Err(ClassifyError::ShapeMismatch(_))));
        let w = IsomorphismWitness::AEta { a: IntMatrix::identity(2), eta: vec![rat(0, 1)], c: None };
        assert!(matches!(check_witness(&s, &s, &w, 2), Err(ClassifyError::ShapeMismatch(_))));
    }

    #[test]
    fn group_not_preserved() {
        // Λe₂ = (1/3, 1/3, 0) keeps the trace of e₂ but leaves G ⊂ ℤ[1/2]³
        let s = sp(&[0, 3, 2]);
        let mut l = RatMatrix::identity(3);
        l.set(1, 1, rat(1, 3));
        l.set(0, 1, rat(1, 3));
        let w = IsomorphismWitness::Lambda { lambda: l };
        assert!(matches!(check_witness(&s, &s, &w, 2).unwrap(), WitnessCheck::Refuted { .. }));
    }
}
