//! The class λ = m_N, where G = ℤᴺ⁻¹ ⊕ ℤ[1/λ]v and the isomorphism type is
//! fixed by N, Prim(λ) and I(J) = Σ v_i λ^{N−i}.

use super::verdict::{IsomorphismWitness, Outcome, TraceEntry, Verdict};
use super::ClassifyError;
use crate::exactalg::{ipow, prime_support, Int, IntMatrix, Rat};
use crate::spectral::perron;
use crate::specimen::Specimen;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Data of a specimen in the class: λ, v (integral, v₁ = v_N = 1) and I(J).
pub(crate) struct ClassData {
    pub n: usize,
    pub lambda: Int,
    pub v: Vec<Int>,
    pub i: Int,
}

pub(crate) fn class_data(s: &Specimen) -> Result<ClassData, ClassifyError> {
    let pd = perron(s)?;
    match (&pd.lambda_int, &pd.i_j) {
        (Some(l), Some(i)) => Ok(ClassData {
            n: s.n(),
            lambda: l.clone(),
            v: pd.v_int().expect("rational eigenvector"),
            i: i.clone(),
        }),
        _ => Err(ClassifyError::NotInClass(s.to_string())),
    }
}

impl ClassData {
    /// v̄ = (v₂, …, v_N).
    pub fn v_bar(&self) -> Vec<Int> {
        self.v[1..].to_vec()
    }
}

/// Numerators of λ^{i−1}·I·η(e_i) for i = 2..N, namely
/// λ′^{N−1} − λ^{i−1} Σ_j a_{ji} λ′^{N−j}. η takes values in ℤ[1/λ] exactly
/// when I divides every entry, since gcd(I, λ) = 1.
pub(crate) fn eta_numerators(c1: &ClassData, c2: &ClassData, a: &IntMatrix) -> Vec<Int> {
    let n = c1.n;
    let top = ipow(&c2.lambda, (n - 1) as u32);
    (2..=n)
        .map(|i| {
            let col: Int = (2..=n)
                .map(|j| a.get(j - 2, i - 2) * ipow(&c2.lambda, (n - j) as u32))
                .sum();
            &top - ipow(&c1.lambda, (i - 1) as u32) * col
        })
        .collect()
}

pub(crate) fn eta_values(c1: &ClassData, c2: &ClassData, a: &IntMatrix) -> Vec<Rat> {
    eta_numerators(c1, c2, a)
        .into_iter()
        .enumerate()
        .map(|(k, num)| Rat::new(num, ipow(&c1.lambda, (k + 1) as u32) * &c1.i))
        .collect()
}

/// A = I + (v̄′ − v̄)e_{N−1}ᵀ with η = 0, valid when λ = λ′ and I(J) = I(J′).
pub fn same_lambda_witness(s1: &Specimen, s2: &Specimen) -> Result<IsomorphismWitness, ClassifyError> {
    let (c1, c2) = (class_data(s1)?, class_data(s2)?);
    let k = c1.n - 1;
    let mut a = IntMatrix::identity(k);
    let (vb, vb2) = (c1.v_bar(), c2.v_bar());
    for r in 0..k {
        let x = a.get(r, k - 1) + &vb2[r] - &vb[r];
        a.set(r, k - 1, x);
    }
    let eta = eta_values(&c1, &c2, &a);
    Ok(IsomorphismWitness::AEta { a, eta, c: None })
}

fn mod_inverse(x: &Int, m: &Int) -> Option<Int> {
    let e = x.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// N = 3 recipe: A = [[c v₂′ ± 1, v₂′ − c v₂ v₂′ ∓ v₂], [c, 1 − c v₂]], with c
/// solving c λ λ′² ≡ (±λ − λ′) λ′ (mod I). Returns (c, A) for the first sign
/// whose η passes the integrality congruences.
pub fn n3_witness_c(s1: &Specimen, s2: &Specimen) -> Result<Option<(Int, IntMatrix)>, ClassifyError> {
    let (c1, c2) = (class_data(s1)?, class_data(s2)?);
    if c1.n != 3 || c2.n != 3 || c1.i != c2.i {
        return Ok(None);
    }
    let (l, lp, i) = (&c1.lambda, &c2.lambda, &c1.i);
    let (v2, v2p) = (&c1.v[1], &c2.v[1]);
    let Some(inv) = mod_inverse(&(l * lp * lp), i) else {
        return Ok(None);
    };
    for sigma in [Int::one(), -Int::one()] {
        let rhs = (&sigma * l - lp) * lp;
        let c = (rhs * &inv).mod_floor(i);
        let a = IntMatrix::from_rows(vec![
            vec![&c * v2p + &sigma, v2p - &c * v2 * v2p - &sigma * v2],
            vec![c.clone(), Int::one() - &c * v2],
        ]);
        if eta_numerators(&c1, &c2, &a).iter().all(|x| x.mod_floor(i).is_zero()) {
            return Ok(Some((c, a)));
        }
    }
    Ok(None)
}

/// The witness attached to an Isomorphic verdict in the class, when a
/// construction is known.
pub fn lambda_eq_mn_witness(s1: &Specimen, s2: &Specimen) -> Result<Option<IsomorphismWitness>, ClassifyError> {
    let (c1, c2) = (class_data(s1)?, class_data(s2)?);
    if c1.lambda == c2.lambda {
        return Ok(Some(same_lambda_witness(s1, s2)?));
    }
    if c1.n == 3 {
        if let Some((c, a)) = n3_witness_c(s1, s2)? {
            let eta = eta_values(&c1, &c2, &a);
            return Ok(Some(IsomorphismWitness::AEta { a, eta, c: Some(c) }));
        }
    }
    Ok(None)
}

pub fn decide_lambda_eq_mn(s1: &Specimen, s2: &Specimen) -> Result<Verdict, ClassifyError> {
    let (c1, c2) = (class_data(s1)?, class_data(s2)?);
    let test = "λ = m_N classification";
    let mut trace = Vec::new();
    let (p1, p2) = (prime_support(&c1.lambda), prime_support(&c2.lambda));
    let differ = if c1.n != c2.n {
        Some(format!("N differs: {} vs {}", c1.n, c2.n))
    } else if p1 != p2 {
        Some(format!("Prim(λ) differs for λ = {} vs {}", c1.lambda, c2.lambda))
    } else if c1.i != c2.i {
        Some(format!("I(J) differs: {} vs {}", c1.i, c2.i))
    } else {
        None
    };
    if let Some(d) = differ {
        trace.push(TraceEntry::new(test, Outcome::Decided, d.clone()));
        return Ok(Verdict::non_isomorphic(format!("{test}: {d}"), trace));
    }
    let detail = format!("N = {}, Prim(λ) equal for λ = {} and {}, I(J) = {}", c1.n, c1.lambda, c2.lambda, c1.i);
    trace.push(TraceEntry::new(test, Outcome::Decided, detail.clone()));
    let witness = lambda_eq_mn_witness(s1, s2)?;
    Ok(Verdict::isomorphic(format!("{test}: {detail}"), witness, trace))
}

/// The N = 3 specimen with λ = m_N and v = (1, v₂, 1): m = (λ − v₂, λv₂ − 1, λ).
#[cfg(test)]
pub(crate) fn n3_specimen(lambda: u64, v2: u64) -> Option<Specimen> {
    if v2 == 0 || v2 > lambda {
        return None;
    }
    Specimen::from_m(vec![lambda - v2, lambda * v2 - 1, lambda]).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::VerdictKind;
    use crate::exactalg::big;
    use num_traits::Signed;

    fn sp(m: &[u64]) -> Specimen {
        Specimen::from_m(m.to_vec()).unwrap()
    }

    #[test]
    fn n3_pair_48_54() {
        let (s1, s2) = (n3_specimen(48, 15).unwrap(), n3_specimen(54, 2).unwrap());
        assert_eq!(s1.m(), &[33, 719, 48]);
        assert_eq!(s2.m(), &[52, 107, 54]);
        let v = decide_lambda_eq_mn(&s1, &s2).unwrap();
        assert_eq!(v.kind, VerdictKind::Isomorphic);
        let (c, a) = n3_witness_c(&s1, &s2).unwrap().unwrap();
        assert_eq!(c, big(7));
        assert_eq!(a.det().abs(), big(1));
        match v.witness.unwrap() {
            IsomorphismWitness::AEta { c, .. } => assert_eq!(c, Some(big(7))),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn n3_congruence_solutions_by_search() {
        let (s1, s2) = (n3_specimen(48, 15).unwrap(), n3_specimen(54, 2).unwrap());
        let (c1, c2) = (class_data(&s1).unwrap(), class_data(&s2).unwrap());
        assert_eq!(c1.i, big(3025));
        let mut found = Vec::new();
        for sigma in [1i64, -1] {
            for c in 0..3025i64 {
                let (c, s, v2, v2p) = (big(c), big(sigma), big(15), big(2));
                let a = IntMatrix::from_rows(vec![
                    vec![&c * &v2p + &s, &v2p - &c * &v2 * &v2p - &s * &v2],
                    vec![c.clone(), Int::one() - &c * &v2],
                ]);
                if eta_numerators(&c1, &c2, &a).iter().all(|x| x.mod_floor(&c1.i).is_zero()) {
                    found.push((sigma, c));
                }
            }
        }
        assert_eq!(found, vec![(1, big(7)), (-1, big(119))]);
    }

    #[test]
    fn same_lambda_example() {
        let w = same_lambda_witness(&sp(&[1, 2, 11, 3]), &sp(&[0, 8, 2, 3])).unwrap();
        let IsomorphismWitness::AEta { a, eta, .. } = w else { panic!() };
        assert_eq!(a, IntMatrix::from_i64(&[&[1, 0, 1], &[0, 1, -3], &[0, 0, 1]]));
        assert!(eta.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rank_two_family_separates() {
        for l in 2..8u64 {
            for lp in 2..8u64 {
                let v = decide_lambda_eq_mn(&sp(&[l - 1, l]), &sp(&[lp - 1, lp])).unwrap();
                let want = if l == lp { VerdictKind::Isomorphic } else { VerdictKind::NonIsomorphic };
                assert_eq!(v.kind, want, "{l} vs {lp}");
            }
        }
    }

    #[test]
    fn outside_class() {
        assert!(matches!(decide_lambda_eq_mn(&sp(&[1, 0, 4]), &sp(&[0, 3, 2])), Err(ClassifyError::NotInClass(_))));
    }
}
