//! The comparison pipeline. Stages run from cheap invariants to the class
//! decisions and trace-ratio obstructions; the first definitive stage wins and
//! every stage's trace is kept.

use super::bundle::{bundle, InvariantBundle, SplitFlag};
use super::lambda_mn::decide_lambda_eq_mn;
use super::necessary::necessary_on_bundles;
use super::rank2::decide_rank2;
use super::tau::tau_on_bundles;
use super::verdict::{IsomorphismWitness, Outcome, TraceEntry, Verdict};
use super::ClassifyError;
use crate::exactalg::{prime_support, Int, RatMatrix};
use crate::specimen::Specimen;
use num_traits::One;

fn identity_witness(n: usize) -> IsomorphismWitness {
    IsomorphismWitness::Lambda { lambda: RatMatrix::identity(n) }
}

/// Equal Perron eigenvalues give equal traces α = (1, 1/λ, …, 1/λᴺ⁻¹). The
/// Perron root is the largest real root of its minimal polynomial, so equal
/// minimal polynomials mean equal roots.
fn same_lambda(b1: &InvariantBundle, b2: &InvariantBundle) -> bool {
    match (&b1.lambda_integer, &b2.lambda_integer) {
        (Some(x), Some(y)) => x == y,
        (None, None) => b1.lambda_detail.minpoly == b2.lambda_detail.minpoly,
        _ => false,
    }
}

/// Every nonzero m_i is divisible by all primes of m_N, so G = ℤ[1/m_N]ᴺ.
fn full_localization(s: &Specimen) -> bool {
    let pm = prime_support(&s.m_n());
    s.m().iter().filter(|&&x| x != 0).all(|&x| pm.is_subset(&prime_support(&Int::from(x))))
}

fn identity_on_bundles(b1: &InvariantBundle, b2: &InvariantBundle) -> (Option<Verdict>, TraceEntry) {
    let test = "identity embedding";
    if b1.n != b2.n || !same_lambda(b1, b2) || b1.prim_m_n != b2.prim_m_n {
        return (None, TraceEntry::new(test, Outcome::HypothesesUnmet, "needs N = N′, λ = λ′ and Prim(m_N) = Prim(m_N′)"));
    }
    if !(full_localization(&b1.specimen) && full_localization(&b2.specimen)) {
        let d = "some nonzero m_i misses a prime of m_N";
        return (None, TraceEntry::new(test, Outcome::HypothesesUnmet, d));
    }
    let d = "G = G′ = ℤ[1/m_N]ᴺ with the same trace, Λ = I";
    let e = TraceEntry::new(test, Outcome::Decided, d);
    let v = Verdict::isomorphic(format!("{test}: {d}"), Some(identity_witness(b1.n)), vec![e.clone()]);
    (Some(v), e)
}

fn monic_on_bundles(b1: &InvariantBundle, b2: &InvariantBundle) -> (Option<Verdict>, TraceEntry) {
    let test = "monic same root";
    if !(b1.m_n.is_one() && b2.m_n.is_one()) {
        return (None, TraceEntry::new(test, Outcome::HypothesesUnmet, "needs m_N = m_N′ = 1"));
    }
    if b1.n != b2.n || !same_lambda(b1, b2) {
        let d = format!("G = G′ = ℤᴺ but N or λ differ (N = {} vs {})", b1.n, b2.n);
        return (None, TraceEntry::new(test, Outcome::HypothesesUnmet, d));
    }
    let d = "G = G′ = ℤᴺ with the same trace, Λ = I";
    let e = TraceEntry::new(test, Outcome::Decided, d);
    let v = Verdict::isomorphic(format!("{test}: {d}"), Some(identity_witness(b1.n)), vec![e.clone()]);
    (Some(v), e)
}

/// Isomorphic with Λ = I when G = G′ = ℤ[1/m_N]ᴺ and λ = λ′.
pub fn identity_embedding_test(s1: &Specimen, s2: &Specimen) -> Result<Verdict, ClassifyError> {
    let (b1, b2) = (bundle(s1)?, bundle(s2)?);
    Ok(match identity_on_bundles(&b1, &b2) {
        (Some(v), _) => v,
        (None, e) => Verdict::inconclusive(vec![e]),
    })
}

/// Isomorphic with Λ = I when m_N = m_N′ = 1, N = N′ and λ = λ′.
pub fn monic_same_root_test(s1: &Specimen, s2: &Specimen) -> Result<Verdict, ClassifyError> {
    let (b1, b2) = (bundle(s1)?, bundle(s2)?);
    Ok(match monic_on_bundles(&b1, &b2) {
        (Some(v), _) => v,
        (None, e) => Verdict::inconclusive(vec![e]),
    })
}

fn split_mismatch(b1: &InvariantBundle, b2: &InvariantBundle) -> (Option<String>, TraceEntry) {
    let test = "splitting of ker τ";
    let definite = |f: SplitFlag| f != SplitFlag::Unknown;
    if definite(b1.split) && definite(b2.split) && b1.split != b2.split {
        let d = format!("{:?} vs {:?}", b1.split, b2.split);
        (Some(format!("{test}: {d}")), TraceEntry::new(test, Outcome::Decided, d))
    } else {
        (None, TraceEntry::new(test, Outcome::NoConclusion, format!("{:?} vs {:?}", b1.split, b2.split)))
    }
}

fn finish(v: Verdict, mut trace: Vec<TraceEntry>) -> Verdict {
    trace.extend(v.trace);
    Verdict { trace, ..v }
}

pub fn compare(s1: &Specimen, s2: &Specimen) -> Result<Verdict, ClassifyError> {
    if s1 == s2 {
        return compare_equal(s1);
    }
    compare_bundles(&bundle(s1)?, &bundle(s2)?)
}

fn compare_equal(s: &Specimen) -> Result<Verdict, ClassifyError> {
    let e = TraceEntry::new("equal specimens", Outcome::Decided, "m = m′");
    Ok(Verdict::isomorphic("equal specimens", Some(identity_witness(s.n())), vec![e]))
}

/// The pipeline on precomputed bundles.
pub fn compare_bundles(b1: &InvariantBundle, b2: &InvariantBundle) -> Result<Verdict, ClassifyError> {
    let (s1, s2) = (&b1.specimen, &b2.specimen);
    if s1 == s2 {
        return compare_equal(s1);
    }
    let mut trace = Vec::new();
    let v = necessary_on_bundles(b1, b2);
    if v.is_definitive() {
        return Ok(finish(v, trace));
    }
    trace.extend(v.trace);

    if b1.n == 2 && b2.n == 2 {
        return Ok(finish(decide_rank2(s1, s2)?, trace));
    }
    if b1.lambda_eq_mn() && b2.lambda_eq_mn() {
        return Ok(finish(decide_lambda_eq_mn(s1, s2)?, trace));
    }
    for stage in [monic_on_bundles, identity_on_bundles] {
        match stage(b1, b2) {
            (Some(v), _) => return Ok(finish(v, trace)),
            (None, e) => trace.push(e),
        }
    }
    let v = tau_on_bundles(b1, b2);
    if v.is_definitive() {
        return Ok(finish(v, trace));
    }
    trace.extend(v.trace);
    let (hit, e) = split_mismatch(b1, b2);
    trace.push(e);
    Ok(match hit {
        Some(r) => Verdict::non_isomorphic(r, trace),
        None => Verdict::inconclusive(trace),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::witness::{check_witness, WitnessCheck};
    use crate::classify::VerdictKind;
    use proptest::prelude::*;

    fn sp(m: &[u64]) -> Specimen {
        Specimen::from_m(m.to_vec()).unwrap()
    }

    /// Valid N = 4 specimens with λ = 2: p_L(2) = 0 means 8m₁ + 4m₂ + 2m₃ + m₄ = 16.
    fn lambda_two_n4() -> Vec<Specimen> {
        let mut out = Vec::new();
        for m1 in 0..=2u64 {
            for m2 in 0..=4u64 {
                for m3 in 0..=8u64 {
                    let used = 8 * m1 + 4 * m2 + 2 * m3;
                    if used >= 16 {
                        continue;
                    }
                    if let Ok(s) = Specimen::from_m(vec![m1, m2, m3, 16 - used]) {
                        if crate::spectral::integral_lambda(&s) == Some(Int::from(2)) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn lambda_two_rank_four_family_is_fully_decided() {
        let specs = lambda_two_n4();
        assert_eq!(specs.len(), 22);
        let bundles: Vec<_> = specs.iter().map(|s| bundle(s).unwrap()).collect();
        let mut iso = Vec::new();
        for i in 0..specs.len() {
            for j in i + 1..specs.len() {
                let v = compare_bundles(&bundles[i], &bundles[j]).unwrap();
                assert_ne!(v.kind, VerdictKind::Inconclusive, "{} vs {}: {:?}", specs[i], specs[j], v.trace);
                if v.kind == VerdictKind::Isomorphic {
                    iso.push((i, j));
                    if let Some(w) = &v.witness {
                        let c = check_witness(&specs[i], &specs[j], w, 8).unwrap();
                        assert!(c.is_verified(), "{} vs {}: {c:?}", specs[i], specs[j]);
                    }
                }
            }
        }
        let mut parent: Vec<usize> = (0..specs.len()).collect();
        fn root(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = root(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (i, j) in iso {
            let (a, b) = (root(&mut parent, i), root(&mut parent, j));
            parent[a] = b;
        }
        let classes: std::collections::BTreeSet<_> = (0..specs.len()).map(|i| root(&mut parent, i)).collect();
        assert_eq!(classes.len(), 20);
    }

    #[test]
    fn identity_embedding_examples() {
        let (a, b) = (sp(&[0, 2, 2, 4]), sp(&[0, 0, 6, 4]));
        let v = identity_embedding_test(&a, &b).unwrap();
        assert_eq!(v.kind, VerdictKind::Isomorphic);
        assert!(check_witness(&a, &b, &v.witness.unwrap(), 8).unwrap().is_verified());
        // m₁ = 1 misses the prime 2
        let v = identity_embedding_test(&sp(&[1, 0, 2, 4]), &b).unwrap();
        assert_eq!(v.kind, VerdictKind::Inconclusive);
        let s = sp(&[2, 0, 4]);
        assert_eq!(identity_embedding_test(&s, &s).unwrap().kind, VerdictKind::Isomorphic);
    }

    #[test]
    fn monic_examples() {
        let v = compare(&sp(&[1, 0, 0, 0, 1]), &sp(&[0, 0, 1, 1, 1])).unwrap();
        assert_eq!(v.kind, VerdictKind::Isomorphic, "{:?}", v.trace);
        let w = v.witness.unwrap();
        assert!(check_witness(&sp(&[1, 0, 0, 0, 1]), &sp(&[0, 0, 1, 1, 1]), &w, 8).unwrap().is_verified());
        let t = [sp(&[0, 0, 0, 0, 2, 2, 1]), sp(&[0, 0, 1, 0, 1, 1, 1]), sp(&[0, 0, 2, 0, 0, 0, 1])];
        for i in 0..3 {
            for j in 0..3 {
                let v = monic_same_root_test(&t[i], &t[j]).unwrap();
                assert_eq!(v.kind, VerdictKind::Isomorphic, "{} vs {}", t[i], t[j]);
            }
        }
    }

    #[test]
    fn weight_list_pair() {
        let (a, b) = (Specimen::from_l(&[1, 3, 3, 3, 4, 4]).unwrap(), Specimen::from_l(&[2, 2, 2, 3, 4, 4]).unwrap());
        assert_eq!(a.m(), &[1, 0, 3, 2]);
        assert_eq!(b.m(), &[0, 3, 1, 2]);
        let v = compare(&a, &b).unwrap();
        assert_eq!(v.kind, VerdictKind::NonIsomorphic);
        let r = v.reason.unwrap();
        // λ = m_N = 2, so τ(v) = I(J)/8 gives 17/8 and 19/8
        assert!(r.contains("17 vs 19"), "{r}");
    }

    #[test]
    fn equal_specimens() {
        let s = sp(&[0, 1, 1, 10]);
        let v = compare(&s, &s).unwrap();
        assert_eq!(v.kind, VerdictKind::Isomorphic);
        assert_eq!(check_witness(&s, &s, &v.witness.unwrap(), 8).unwrap(), WitnessCheck::Verified { depth: 8 });
    }

    fn small_specimen() -> impl Strategy<Value = Specimen> {
        prop::collection::vec(0u64..6, 2..5).prop_filter_map("valid", |mut m| {
            let last = m.len() - 1;
            m[last] += 1;
            Specimen::from_m(m).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn verdicts_are_symmetric(s1 in small_specimen(), s2 in small_specimen()) {
            let (v, w) = (compare(&s1, &s2).unwrap(), compare(&s2, &s1).unwrap());
            prop_assert_eq!(v.kind, w.kind);
        }

        #[test]
        fn witnesses_check_out(s1 in small_specimen(), s2 in small_specimen()) {
            let v = compare(&s1, &s2).unwrap();
            if let Some(w) = &v.witness {
                let refuted = matches!(check_witness(&s1, &s2, w, 8).unwrap(), WitnessCheck::Refuted { .. });
                prop_assert!(!refuted, "{} vs {}", s1, s2);
            }
        }

        /// λ′ = kλ with a new prime separates the (λ − 1, λ) family.
        #[test]
        fn lambda_class_with_new_prime(l in 2u64..12, k in 2u64..5) {
            let lp = l * k;
            prop_assume!(prime_support(&Int::from(lp)) != prime_support(&Int::from(l)));
            let v = compare(&sp(&[l - 1, l]), &sp(&[lp - 1, lp])).unwrap();
            prop_assert_eq!(v.kind, VerdictKind::NonIsomorphic);
        }
    }
}
