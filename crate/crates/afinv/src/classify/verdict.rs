use crate::exactalg::{strser, Int, IntMatrix, Rat, RatMatrix};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Isomorphic,
    NonIsomorphic,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// The compared quantity agrees on both sides.
    Equal,
    /// The test concluded; the verdict cites it.
    Decided,
    /// A hypothesis of the test could not be verified.
    HypothesesUnmet,
    /// Hypotheses hold but the test did not separate.
    NoConclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub test: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl TraceEntry {
    pub fn new(test: &str, outcome: Outcome, detail: impl Into<String>) -> Self {
        TraceEntry { test: test.to_string(), outcome, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum IsomorphismWitness {
    /// θ(g) = Λg on G ⊂ ℚᴺ.
    Lambda {
        #[serde(rename = "Lambda")]
        lambda: RatMatrix,
    },
    /// θ on ℤᴺ⁻¹ ⊕ ℤ[1/λ]v given by A on the first summand and the
    /// correction η; `c` records the free parameter of the N = 3 recipe.
    AEta {
        #[serde(rename = "A")]
        a: IntMatrix,
        #[serde(serialize_with = "strser::rats")]
        eta: Vec<Rat>,
        #[serde(serialize_with = "strser::opt_int")]
        c: Option<Int>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// The deciding test and its exact values; absent when inconclusive.
    pub reason: Option<String>,
    pub trace: Vec<TraceEntry>,
    pub witness: Option<IsomorphismWitness>,
}

impl Verdict {
    pub fn isomorphic(reason: impl Into<String>, witness: Option<IsomorphismWitness>, trace: Vec<TraceEntry>) -> Self {
        Verdict { kind: VerdictKind::Isomorphic, reason: Some(reason.into()), trace, witness }
    }

    pub fn non_isomorphic(reason: impl Into<String>, trace: Vec<TraceEntry>) -> Self {
        Verdict { kind: VerdictKind::NonIsomorphic, reason: Some(reason.into()), trace, witness: None }
    }

    pub fn inconclusive(trace: Vec<TraceEntry>) -> Self {
        Verdict { kind: VerdictKind::Inconclusive, reason: None, trace, witness: None }
    }

    pub fn is_definitive(&self) -> bool {
        self.kind != VerdictKind::Inconclusive
    }
}
