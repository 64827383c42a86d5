//! Node (n, m) carries the full matrix algebra on E_n(m): words of weight n for
//! m = 0, and words γ = αi with L(α) < n < L(γ) = n + m otherwise. If W(k)
//! counts words of weight k, then #E_n(0) = W(n) and
//! #E_n(m) = Σ_{L_i > m} W(n + m − L_i).
//!
//! Edges run (n−1, 0) → (n, m) with multiplicity #{i : L_i − 1 = m} and
//! (n−1, m) → (n, m−1) once, so the incidence is J restricted to nodes present.

use super::semigroup::semigroup;
use super::{gcd_check, BratteliError};
use crate::exactalg::{Int, IntMatrix};
use crate::specimen::Specimen;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Level {
    /// Level number in the original diagram; kept through telescoping.
    pub level: usize,
    /// #E_n(m) for m = 0..N−1; zero means the node is absent.
    #[serde(serialize_with = "crate::exactalg::strser::ints")]
    pub dims: Vec<Int>,
}

impl Level {
    pub fn present(&self, m: usize) -> bool {
        !self.dims[m].is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    /// Level number of the source node.
    pub level: usize,
    pub from: usize,
    pub to: usize,
    #[serde(serialize_with = "crate::exactalg::strser::int")]
    pub multiplicity: Int,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub weights: Vec<u64>,
    pub n: usize,
    pub levels: Vec<Level>,
    /// incidence[k] maps levels[k] to levels[k+1]; entry (to, from).
    pub incidence: Vec<IntMatrix>,
    /// First level number from which every node is present and the
    /// incidence is J.
    pub stabilization: Option<usize>,
}

impl Diagram {
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (k, a) in self.incidence.iter().enumerate() {
            for from in 0..self.n {
                for to in 0..self.n {
                    let mult = a.get(to, from);
                    if !mult.is_zero() {
                        out.push(Edge { level: self.levels[k].level, from, to, multiplicity: mult.clone() });
                    }
                }
            }
        }
        out
    }

    /// dims(k+1) = incidence[k]·dims(k) at every step.
    pub fn check_recursion(&self) -> bool {
        self.incidence
            .iter()
            .enumerate()
            .all(|(k, a)| a.mul_vec(&self.levels[k].dims) == self.levels[k + 1].dims)
    }

    pub fn dims_at(&self, level: usize) -> Option<&[Int]> {
        self.levels.iter().find(|l| l.level == level).map(|l| l.dims.as_slice())
    }
}

/// Number of words of each weight 0..=top.
fn word_counts(l: &[u64], top: usize) -> Vec<Int> {
    let mut w = vec![Int::zero(); top + 1];
    w[0] = Int::one();
    for k in 1..=top {
        w[k] = l.iter().filter(|&&x| x as usize <= k).map(|&x| w[k - x as usize].clone()).sum();
    }
    w
}

fn dims(l: &[u64], n: usize, rank: usize, w: &[Int]) -> Vec<Int> {
    let mut d = vec![w[n].clone()];
    for m in 1..rank {
        let s = l
            .iter()
            .filter(|&&x| x as usize > m && n + m >= x as usize)
            .map(|&x| w[n + m - x as usize].clone())
            .sum();
        d.push(s);
    }
    d
}

pub fn build_diagram(l: &[u64], depth: usize) -> Result<Diagram, BratteliError> {
    gcd_check(l)?;
    let s = Specimen::from_l(l)?;
    let j = s.matrix();
    let rank = s.n();
    let w = word_counts(l, depth + rank);
    let levels: Vec<Level> = (0..=depth).map(|n| Level { level: n, dims: dims(l, n, rank, &w) }).collect();
    let incidence = (1..=depth)
        .map(|n| {
            let (prev, cur) = (&levels[n - 1], &levels[n]);
            let mut a = j.clone();
            for to in 0..rank {
                for from in 0..rank {
                    if !(prev.present(from) && cur.present(to)) {
                        a.set(to, from, Int::zero());
                    }
                }
            }
            a
        })
        .collect();
    let stabilization = levels.iter().position(|lv| (0..rank).all(|m| lv.present(m)));
    let Some(stab) = stabilization else {
        let suggested = semigroup(l)?.conductor as usize + rank;
        return Err(BratteliError::DepthTooShallow { depth, suggested });
    };
    Ok(Diagram { weights: l.to_vec(), n: rank, levels, incidence, stabilization: Some(stab) })
}

/// Keeps the levels listed in `cuts` and composes the incidence in between.
pub fn telescope(d: &Diagram, cuts: &[usize]) -> Result<Diagram, BratteliError> {
    if cuts.is_empty() {
        return Err(BratteliError::InvalidCuts("no levels kept".into()));
    }
    if cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BratteliError::InvalidCuts(format!("{cuts:?} is not strictly increasing")));
    }
    let pos: Vec<usize> = cuts
        .iter()
        .map(|c| {
            d.levels
                .iter()
                .position(|l| l.level == *c)
                .ok_or_else(|| BratteliError::InvalidCuts(format!("level {c} is not in the diagram")))
        })
        .collect::<Result<_, _>>()?;
    let levels = pos.iter().map(|&p| d.levels[p].clone()).collect();
    let incidence = pos
        .windows(2)
        .map(|w| (w[0]..w[1]).fold(IntMatrix::identity(d.n), |acc, k| &d.incidence[k] * &acc))
        .collect();
    let stabilization = d.stabilization.and_then(|s| cuts.iter().copied().find(|&c| c >= s));
    Ok(Diagram { weights: d.weights.clone(), n: d.n, levels, incidence, stabilization })
}
