//! Exact invariants, isomorphism tests and Bratteli diagrams for stationary
//! AF-algebras whose incidence matrix is a companion matrix.

pub mod exactalg;
pub mod specimen;
pub mod spectral;
pub mod decomp;
pub mod classify;
pub mod enumerate;
pub mod bratteli;
pub mod cli;
