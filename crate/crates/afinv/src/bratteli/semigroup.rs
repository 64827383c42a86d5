//! The numerical semigroup 𝒫 generated by L.

use super::{gcd_check, BratteliError};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumericalSemigroup {
    /// Distinct weights, ascending.
    pub generators: Vec<u64>,
    /// Positive integers outside 𝒫, ascending.
    pub gaps: Vec<u64>,
    /// Smallest c with [c, ∞) ⊆ 𝒫.
    pub conductor: u64,
}

impl NumericalSemigroup {
    pub fn contains(&self, n: u64) -> bool {
        n >= self.conductor || self.gaps.binary_search(&n).is_err()
    }
}

/// Sieves until min(L) consecutive members appear; from there on adding
/// min(L) covers everything, so the sieve never needs an a priori bound.
pub fn semigroup(l: &[u64]) -> Result<NumericalSemigroup, BratteliError> {
    gcd_check(l)?;
    let mut generators = l.to_vec();
    generators.sort_unstable();
    generators.dedup();
    let step = generators[0] as usize;
    let mut member = vec![true];
    let mut run = 1usize;
    let mut n = 0usize;
    while run < step {
        n += 1;
        let hit = generators.iter().any(|&g| g as usize <= n && member[n - g as usize]);
        member.push(hit);
        run = if hit { run + 1 } else { 0 };
    }
    let conductor = (n + 1 - run) as u64;
    let gaps = (1..conductor).filter(|&k| !member[k as usize]).collect();
    Ok(NumericalSemigroup { generators, gaps, conductor })
}
