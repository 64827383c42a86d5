//! Obstructions from the normalized trace ⟨α|v⟩ when λ is an integer.
//!
//! A unital isomorphism θ: G → G′ with deg θ ≤ p/q and λ′ᵖ = λ^q forces
//! τ(v)/τ(v′) ∈ ℤ[1/λ′]. The degree of θ is bounded by the m-scaling degree
//! of the target, m = lcm(m_N, m_N′), which a scaling certificate bounds.
//! When D_λ′(G′) = ℤ[1/λ′]v′ is certified the ratio must even be a unit.

use super::bundle::{bundle, InvariantBundle};
use super::verdict::{Outcome, TraceEntry, Verdict};
use super::ClassifyError;
use crate::exactalg::{in_localization, is_localized_unit, lcm, prime_support, rat_to_string, valuation, Int, Rat};
use crate::specimen::Specimen;
use std::collections::BTreeSet;

/// The ratio r with v_p(λ) = r·v_p(λ′) for every prime, when the exponent
/// vectors are parallel.
fn exponent_ratio(lambda: &Int, lambda_p: &Int) -> Option<Rat> {
    let primes = prime_support(lambda);
    if primes != prime_support(lambda_p) || primes.is_empty() {
        return None;
    }
    let mut ratio: Option<Rat> = None;
    for p in &primes {
        let r = Rat::new(Int::from(valuation(lambda, p)), Int::from(valuation(lambda_p, p)));
        match &ratio {
            None => ratio = Some(r),
            Some(x) if *x != r => return None,
            _ => {}
        }
    }
    ratio
}

/// Upper bound for m-deg(J′) with m = lcm(m_N, m_N′), or why none is known.
fn target_degree_bound(src: &InvariantBundle, dst: &InvariantBundle) -> Result<(Rat, String), String> {
    let (s, why) = if dst.lambda_eq_mn() {
        (1usize, "λ′ = m_N′ gives m_N′-deg(J′) = 1".to_string())
    } else {
        match dst.scaling_certificate {
            Some(c) => (c, format!("scaling certificate m_N′-deg(J′) ≤ {c}")),
            None => return Err("no scaling certificate for the target".into()),
        }
    };
    let m = lcm(&src.m_n, &dst.m_n);
    let rho = dst
        .prim_m_n
        .iter()
        .map(|p| Rat::new(Int::from(valuation(&m, p)), Int::from(valuation(&dst.m_n, p))))
        .max()
        .unwrap_or_else(|| Rat::from_integer(Int::from(1)));
    let bound = rho * Rat::from_integer(Int::from(s));
    Ok((bound.clone(), format!("{why}; m = {m}, m-deg(J′) ≤ {}", rat_to_string(&bound))))
}

fn degree_test(src: &InvariantBundle, dst: &InvariantBundle, label: &str, trace: &mut Vec<TraceEntry>) -> Option<String> {
    let test = format!("trace-ratio degree test ({label})");
    let unmet = |trace: &mut Vec<TraceEntry>, why: String| {
        trace.push(TraceEntry::new(&test, Outcome::HypothesesUnmet, why));
        None
    };
    if src.n != dst.n || src.prim_m_n != dst.prim_m_n {
        return unmet(trace, "needs N = N′ and Prim(m_N) = Prim(m_N′)".into());
    }
    let (Some(l), Some(lp)) = (&src.lambda_integer, &dst.lambda_integer) else {
        return unmet(trace, "λ irrational".into());
    };
    let Some(pq) = exponent_ratio(l, lp) else {
        return unmet(trace, format!("no p, q with λ′ᵖ = λ^q for λ = {l}, λ′ = {lp}"));
    };
    let (bound, why) = match target_degree_bound(src, dst) {
        Ok(b) => b,
        Err(e) => return unmet(trace, e),
    };
    if bound > pq {
        return unmet(trace, format!("{why} exceeds p/q = {}", rat_to_string(&pq)));
    }
    let ratio = src.tau_rational().unwrap() / dst.tau_rational().unwrap();
    let primes = prime_support(lp);
    let detail = format!(
        "{why} ≤ p/q = {}; τ(v)/τ(v′) = {}",
        rat_to_string(&pq),
        rat_to_string(&ratio)
    );
    if in_localization(&ratio, &primes) {
        trace.push(TraceEntry::new(&test, Outcome::NoConclusion, format!("{detail} ∈ ℤ[1/{lp}]")));
        None
    } else {
        trace.push(TraceEntry::new(&test, Outcome::Decided, format!("{detail} ∉ ℤ[1/{lp}]")));
        Some(format!("trace-ratio degree test: {detail} is not in ℤ[1/{lp}]"))
    }
}

fn common_primes(b1: &InvariantBundle, b2: &InvariantBundle) -> Option<BTreeSet<Int>> {
    let p = b1.prim_lambda()?;
    (b2.prim_lambda()? == p && b1.prim_m_n == p && b2.prim_m_n == p).then_some(p)
}

fn unit_on_bundles(b1: &InvariantBundle, b2: &InvariantBundle, trace: &mut Vec<TraceEntry>) -> Option<String> {
    let test = "trace-ratio unit test";
    let Some(primes) = common_primes(b1, b2) else {
        trace.push(TraceEntry::new(test, Outcome::HypothesesUnmet, "needs Prim(λ) = Prim(λ′) = Prim(m_N) = Prim(m_N′)"));
        return None;
    };
    let target = if b2.rank1_confirmed() {
        "J′"
    } else if b1.rank1_confirmed() {
        "J"
    } else {
        trace.push(TraceEntry::new(test, Outcome::HypothesesUnmet, "D_λ(G) = ℤ[1/λ]v not certified on either side"));
        return None;
    };
    let ratio = b1.tau_rational().unwrap() / b2.tau_rational().unwrap();
    let detail = format!("D_λ = ℤ[1/λ]v certified for {target}; τ(v)/τ(v′) = {}", rat_to_string(&ratio));
    if is_localized_unit(&ratio, &primes) {
        trace.push(TraceEntry::new(test, Outcome::NoConclusion, format!("{detail} is a unit")));
        None
    } else {
        trace.push(TraceEntry::new(test, Outcome::Decided, format!("{detail} is not a unit")));
        let ps: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
        Some(format!("trace-ratio unit test: {detail} is not a product of powers of {{{}}}", ps.join(",")))
    }
}

pub(crate) fn tau_on_bundles(b1: &InvariantBundle, b2: &InvariantBundle) -> Verdict {
    let mut trace = Vec::new();
    if b1.lambda_integer.is_none() || b2.lambda_integer.is_none() {
        trace.push(TraceEntry::new("trace-ratio tests", Outcome::HypothesesUnmet, "λ irrational"));
        return Verdict::inconclusive(trace);
    }
    for (src, dst, label) in [(b1, b2, "J → J′"), (b2, b1, "J′ → J")] {
        if let Some(reason) = degree_test(src, dst, label, &mut trace) {
            return Verdict::non_isomorphic(reason, trace);
        }
    }
    if let Some(reason) = unit_on_bundles(b1, b2, &mut trace) {
        return Verdict::non_isomorphic(reason, trace);
    }
    Verdict::inconclusive(trace)
}

pub fn tau_ratio_test(s1: &Specimen, s2: &Specimen) -> Result<Verdict, ClassifyError> {
    Ok(tau_on_bundles(&bundle(s1)?, &bundle(s2)?))
}

/// Only the unit variant.
pub fn unit_test(s1: &Specimen, s2: &Specimen) -> Result<Verdict, ClassifyError> {
    let (b1, b2) = (bundle(s1)?, bundle(s2)?);
    let mut trace = Vec::new();
    Ok(match unit_on_bundles(&b1, &b2, &mut trace) {
        Some(r) => Verdict::non_isomorphic(r, trace),
        None => Verdict::inconclusive(trace),
    })
}
