//! Invariant bundles, non-isomorphism tests, complete decisions in the rank-2
//! and λ = m_N classes, witness checking and the comparison pipeline.

mod bundle;
mod compare;
mod lambda_mn;
mod necessary;
mod rank2;
mod shift;
mod tau;
mod verdict;
mod witness;

pub use bundle::{bundle, bundle_with_primes, split_test, InvariantBundle, SplitFlag, DEFAULT_PRIMES};
pub use compare::{compare, compare_bundles, identity_embedding_test, monic_same_root_test};
pub use lambda_mn::{decide_lambda_eq_mn, lambda_eq_mn_witness, n3_witness_c, same_lambda_witness};
pub use necessary::necessary_tests;
pub use rank2::{decide_rank2, rank2_parameters};
pub use shift::{conjugated_companion_example, verify_shift_equivalence, ShiftCheck, ShiftExample};
pub use tau::{tau_ratio_test, unit_test};
pub use verdict::{IsomorphismWitness, Outcome, TraceEntry, Verdict, VerdictKind};
pub use witness::{check_witness, lambda_from_a_eta, WitnessCheck, DEFAULT_WITNESS_DEPTH};

use crate::decomp::DecompError;
use crate::spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("expected two rank-2 specimens, got N = {0} and N = {1}")]
    WrongRank(usize, usize),
    #[error("specimen is not in the λ = m_N class: {0}")]
    NotInClass(String),
    #[error("witness shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("the Perron eigenvalue is irrational")]
    LambdaIrrational,
}

impl From<crate::exactalg::ExactError> for ClassifyError {
    fn from(e: crate::exactalg::ExactError) -> Self {
        ClassifyError::Decomp(e.into())
    }
}
