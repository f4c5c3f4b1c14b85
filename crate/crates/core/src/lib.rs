//! Exact combinatorics of mod-r tropical types.
//!
//! Decorated graphs carry a cone label per vertex (External or Internal),
//! contact data fixes the legs' ages, and an r-weighting assigns every edge a
//! slope in Z/rZ balancing each vertex. On top of that the crate computes the
//! shadow group Sh, canonical lifts between levels r and lambda r, degrees of
//! the comparison maps, k_tau, stratum dimensions and the polynomials in
//! lambda assembled from them.

pub mod autgroup;
pub mod cli;
pub mod compare;
pub mod congruence;
pub mod contact;
pub mod error;
pub mod graph;
pub mod polyassemble;
pub mod pushfwd;
pub mod rational;
pub mod registry;
pub mod validation;
pub mod weighting;

pub use error::{Error, Result};
