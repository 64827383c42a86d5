//! All-pairs classification. Pairs are compared in parallel and merged in
//! (i, j) order, so the result does not depend on the thread count.

use super::family::{enumerate_family_with_cap, FamilySpec, DEFAULT_BUDGET};
use super::EnumerateError;
use crate::classify::{bundle, compare_bundles, InvariantBundle, VerdictKind};
use crate::exactalg::Int;
use crate::specimen::Specimen;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Worker threads; None uses the global pool.
    pub jobs: Option<usize>,
    /// Largest family accepted.
    pub budget: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { jobs: None, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub a: String,
    pub b: String,
    pub kind: VerdictKind,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimGroup {
    pub prim_m_n: Vec<String>,
    pub prim_r_d: Vec<String>,
    pub prim_q: Vec<String>,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyClassification {
    pub specimens: Vec<String>,
    pub bundles: Vec<InvariantBundle>,
    /// Isomorphism classes after transitive closure, each in specimen order.
    pub classes: Vec<Vec<String>>,
    /// Class number of each specimen.
    pub class_of: Vec<usize>,
    pub prim_groups: Vec<PrimGroup>,
    pub pairs: Vec<PairVerdict>,
    pub inconclusive: Vec<(String, String)>,
    /// NonIsomorphic pairs that the closure put in one class. Always empty
    /// when the tests are sound.
    pub contradictions: Vec<(String, String)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller index as root so classes are labeled stably
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
    }
}

fn strings(s: &BTreeSet<Int>) -> Vec<String> {
    s.iter().map(|p| p.to_string()).collect()
}

pub fn classify_family(f: &FamilySpec, opts: &ClassifyOptions) -> Result<FamilyClassification, EnumerateError> {
    let valid = FamilySpec { include_gcd_violations: false, ..*f };
    let specs: Vec<Specimen> = enumerate_family_with_cap(&valid, opts.budget)?.into_iter().map(|e| e.specimen).collect();
    classify_specimens(&specs, opts)
}

/// Prim(m_N), Prim(R_D), Prim(Q_{N−D}) as strings.
type PrimKey = (Vec<String>, Vec<String>, Vec<String>);

pub fn classify_specimens(specs: &[Specimen], opts: &ClassifyOptions) -> Result<FamilyClassification, EnumerateError> {
    if specs.len() > opts.budget {
        return Err(EnumerateError::BudgetExceeded { cap: opts.budget });
    }
    let run = || -> Result<FamilyClassification, EnumerateError> {
        let bundles = specs.par_iter().map(bundle).collect::<Result<Vec<_>, _>>()?;
        let idx: Vec<(usize, usize)> =
            (0..specs.len()).flat_map(|i| (i + 1..specs.len()).map(move |j| (i, j))).collect();
        let kinds = idx
            .par_iter()
            .map(|&(i, j)| compare_bundles(&bundles[i], &bundles[j]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(assemble(specs, bundles, &idx, kinds))
    };
    match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    }
}

fn assemble(
    specs: &[Specimen],
    bundles: Vec<InvariantBundle>,
    idx: &[(usize, usize)],
    verdicts: Vec<crate::classify::Verdict>,
) -> FamilyClassification {
    let name = |i: usize| specs[i].to_string();
    let mut uf = UnionFind((0..specs.len()).collect());
    for (&(i, j), v) in idx.iter().zip(&verdicts) {
        if v.kind == VerdictKind::Isomorphic {
            uf.union(i, j);
        }
    }
    let roots: Vec<usize> = (0..specs.len()).map(|i| uf.find(i)).collect();
    let mut label: BTreeMap<usize, usize> = BTreeMap::new();
    let mut classes: Vec<Vec<String>> = Vec::new();
    let mut class_of = Vec::with_capacity(specs.len());
    for (i, r) in roots.iter().enumerate() {
        let next = label.len();
        let c = *label.entry(*r).or_insert(next);
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(name(i));
        class_of.push(c);
    }
    let mut pairs = Vec::with_capacity(idx.len());
    let mut inconclusive = Vec::new();
    let mut contradictions = Vec::new();
    for (&(i, j), v) in idx.iter().zip(verdicts) {
        match v.kind {
            VerdictKind::Inconclusive => inconclusive.push((name(i), name(j))),
            VerdictKind::NonIsomorphic if roots[i] == roots[j] => contradictions.push((name(i), name(j))),
            _ => {}
        }
        pairs.push(PairVerdict { a: name(i), b: name(j), kind: v.kind, reason: v.reason });
    }
    let mut groups: BTreeMap<PrimKey, Vec<String>> = BTreeMap::new();
    for (i, b) in bundles.iter().enumerate() {
        let key = (strings(&b.prim_m_n), strings(&b.prim_r_d), strings(&b.prim_q));
        groups.entry(key).or_default().push(name(i));
    }
    let prim_groups = groups
        .into_iter()
        .map(|((prim_m_n, prim_r_d, prim_q), members)| PrimGroup { prim_m_n, prim_r_d, prim_q, members })
        .collect();
    FamilyClassification {
        specimens: specs.iter().map(|s| s.to_string()).collect(),
        bundles,
        classes,
        class_of,
        prim_groups,
        pairs,
        inconclusive,
        contradictions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(lambda: u64, n: usize) -> FamilyClassification {
        classify_family(&FamilySpec::new(lambda, n), &ClassifyOptions::default()).unwrap()
    }

    #[test]
    fn small_families() {
        let c = run(2, 2);
        assert_eq!(c.classes.len(), 1);
        let c = run(2, 3);
        assert_eq!(c.specimens.len(), 5);
        assert_eq!(c.classes.len(), 5);
        assert!(c.inconclusive.is_empty());
    }

    #[test]
    fn rank_four_at_two() {
        let c = run(2, 4);
        assert_eq!(c.specimens.len(), 22);
        assert_eq!(c.classes.len(), 20);
        assert!(c.inconclusive.is_empty() && c.contradictions.is_empty());
        let big: Vec<&Vec<String>> = c.classes.iter().filter(|k| k.len() > 1).collect();
        assert_eq!(big.len(), 1);
        let want: BTreeSet<String> = ["m=0,2,2,4", "m=0,0,6,4", "m=0,0,4,8"].iter().map(|s| s.to_string()).collect();
        let got: BTreeSet<String> = big[0].iter().cloned().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let one = classify_family(&FamilySpec::new(2, 4), &ClassifyOptions { jobs: Some(1), ..Default::default() }).unwrap();
        let four = classify_family(&FamilySpec::new(2, 4), &ClassifyOptions { jobs: Some(4), ..Default::default() }).unwrap();
        assert_eq!(one.pairs, four.pairs);
        assert_eq!(one.classes, four.classes);
    }

    #[test]
    fn budget_is_enforced() {
        let o = ClassifyOptions { jobs: None, budget: 3 };
        assert!(matches!(classify_family(&FamilySpec::new(2, 4), &o), Err(EnumerateError::BudgetExceeded { cap: 3 })));
    }
}
