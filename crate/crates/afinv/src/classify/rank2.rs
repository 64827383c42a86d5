//! Rank 2. With rational λ the specimen is m = (λ − k, λk), 1 ≤ k < λ, and
//! v = (1, k).

use super::bundle::bundle;
use super::tau::tau_on_bundles;
use super::verdict::{IsomorphismWitness, Outcome, TraceEntry, Verdict};
use super::ClassifyError;
use crate::exactalg::{prime_support, Int, Rat, RatMatrix};
use crate::spectral::integral_lambda;
use crate::specimen::Specimen;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// (λ, k) for a rank-2 specimen with integral λ.
pub fn rank2_parameters(s: &Specimen) -> Option<(Int, Int)> {
    if s.n() != 2 {
        return None;
    }
    let l = integral_lambda(s)?;
    let m2 = s.mj(2);
    if !(&m2 % &l).is_zero() {
        return None;
    }
    let k = m2 / &l;
    (&l - &k == s.mj(1) && k >= Int::one() && k < l).then_some((l, k))
}

fn show(s: &BTreeSet<Int>) -> String {
    let v: Vec<String> = s.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// Prim(λ + k) ⊆ Prim(λ) ∩ Prim(k).
fn sum_condition(l: &Int, k: &Int) -> bool {
    let (pl, pk) = (prime_support(l), prime_support(k));
    prime_support(&(l + k)).iter().all(|p| pl.contains(p) && pk.contains(p))
}

pub fn decide_rank2(s1: &Specimen, s2: &Specimen) -> Result<Verdict, ClassifyError> {
    if s1.n() != 2 || s2.n() != 2 {
        return Err(ClassifyError::WrongRank(s1.n(), s2.n()));
    }
    let mut trace = Vec::new();
    let (r1, r2) = (rank2_parameters(s1), rank2_parameters(s2));
    let (Some((l1, k1)), Some((l2, k2))) = (r1, r2) else {
        let test = "rank 2 with an irrational eigenvalue";
        return Ok(if s1 == s2 {
            trace.push(TraceEntry::new(test, Outcome::Decided, "m = m′"));
            let w = IsomorphismWitness::Lambda { lambda: RatMatrix::identity(2) };
            Verdict::isomorphic(format!("{test}: m = m′"), Some(w), trace)
        } else {
            let d = format!("{s1} vs {s2}");
            trace.push(TraceEntry::new(test, Outcome::Decided, d.clone()));
            Verdict::non_isomorphic(format!("{test}: isomorphic only when m = m′, here {d}"), trace)
        });
    };
    let test = "rank 2 (λ, k) parameters";
    let (pl1, pl2, pk1, pk2) = (prime_support(&l1), prime_support(&l2), prime_support(&k1), prime_support(&k2));
    let values = format!("(λ, k) = ({l1}, {k1}) vs ({l2}, {k2})");
    if pl1 != pl2 || pk1 != pk2 {
        let d = format!(
            "{values}: Prim(λ) {} vs {}, Prim(k) {} vs {}",
            show(&pl1),
            show(&pl2),
            show(&pk1),
            show(&pk2)
        );
        trace.push(TraceEntry::new(test, Outcome::Decided, d.clone()));
        return Ok(Verdict::non_isomorphic(format!("{test}: {d}"), trace));
    }
    if pk1 == pl1 {
        // G = G′ = ℤ[1/λ]² and Λ = diag(1, λ′/λ) matches the traces.
        let d = format!("{values}: Prim(k) = Prim(λ) = {} on both sides", show(&pl1));
        trace.push(TraceEntry::new(test, Outcome::Decided, d.clone()));
        let mut l = RatMatrix::identity(2);
        l.set(1, 1, Rat::new(l2.clone(), l1.clone()));
        let w = IsomorphismWitness::Lambda { lambda: l };
        return Ok(Verdict::isomorphic(format!("{test}: {d}"), Some(w), trace));
    }
    if sum_condition(&l1, &k1) && sum_condition(&l2, &k2) {
        let d = format!("{values}: matching Prim sets and Prim(λ + k) ⊆ Prim(λ) ∩ Prim(k) on both sides");
        trace.push(TraceEntry::new(test, Outcome::Decided, d.clone()));
        return Ok(Verdict::isomorphic(format!("{test}: {d}"), None, trace));
    }
    trace.push(TraceEntry::new(test, Outcome::NoConclusion, format!("{values}: Prim sets match without a sufficient condition")));
    let v = tau_on_bundles(&bundle(s1)?, &bundle(s2)?);
    trace.extend(v.trace);
    Ok(Verdict { trace, ..v })
}
