//! Structure of the dimension group G = ∪ J⁻ⁿℤᴺ downstream of the factorization
//! p_L = p₀·p_a.

pub mod companion;
pub mod group;
pub mod quotient;
pub mod scaling;
pub mod subgroup;
pub mod torsion;
pub mod triangular;

pub use companion::Companion;
pub use group::{
    canonical_digits, membership, reconstruct, trace_and_positivity, Digits, GroupElement,
    Membership, Positivity,
};
pub use quotient::{quotient_relations, QuotientRelation, QuotientTable};
pub use scaling::{divisible_subgroup_rank1_witness, scaling_degree_certificate, Rank1Witness};
pub use subgroup::{contains_z_inv_d, ZinvVerdict};
pub use torsion::{torsion_tensor, TorsionReport};
pub use triangular::{decomposition_series, kernel_rank, triangular_form, SeriesStep, TriangularForm};

use crate::exactalg::ExactError;
use crate::spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("the Perron eigenvalue is irrational")]
    LambdaIrrational,
    #[error("membership undecided after {cap} steps")]
    IterationCapExceeded { cap: usize },
    #[error("d·J₀⁻¹ is not an integer matrix")]
    NonIntegralScaledInverse,
    #[error("polynomial does not divide the first-column polynomial")]
    NotAFactor,
    #[error("vector is not in the dimension group")]
    NotMember,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
