//! Families of specimens with a prescribed integral Perron eigenvalue, and the
//! all-pairs classification driver.

mod driver;
mod family;
mod lambda_class;

pub use driver::{classify_family, classify_specimens, ClassifyOptions, FamilyClassification, PairVerdict};
pub use family::{brute_force_family, enumerate_family, enumerate_family_with_cap, EnumeratedSpecimen, FamilySpec, DEFAULT_BUDGET};
pub use lambda_class::{i_collisions, lambda_eq_mn_family, ClassMember, Collision};

use crate::classify::ClassifyError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("family exceeds the budget of {cap} specimens")]
    BudgetExceeded { cap: usize },
    #[error("entries of the family overflow 64 bits")]
    Overflow,
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}
