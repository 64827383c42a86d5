//! Bratteli diagrams of 𝔄_L built from the weights L, the numerical semigroup
//! generated by L, trace values on minimal projections, telescoping, and
//! DOT/JSON export.

mod diagram;
mod export;
mod semigroup;
mod trace;

pub use diagram::{build_diagram, telescope, Diagram, Edge, Level};
pub use export::{from_dot, from_json, to_dot, to_json};
pub use semigroup::{semigroup, NumericalSemigroup};
pub use trace::{trace_profile, TraceLevel, TraceProfile};

use crate::specimen::SpecimenError;
use crate::spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BratteliError {
    #[error("weights have common divisor {0}")]
    GcdNotOne(u64),
    #[error(transparent)]
    Specimen(#[from] SpecimenError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("diagram not stabilized by depth {depth}; try depth ≥ {suggested}")]
    DepthTooShallow { depth: usize, suggested: usize },
    #[error("invalid cut levels: {0}")]
    InvalidCuts(String),
    #[error("cannot parse diagram: {0}")]
    Parse(String),
}

fn gcd_check(l: &[u64]) -> Result<(), BratteliError> {
    use num_integer::Integer;
    if l.is_empty() {
        return Err(SpecimenError::Empty.into());
    }
    if l.contains(&0) {
        return Err(SpecimenError::ZeroWeight.into());
    }
    match l.iter().fold(0u64, |g, x| g.gcd(x)) {
        1 => Ok(()),
        g => Err(BratteliError::GcdNotOne(g)),
    }
}
