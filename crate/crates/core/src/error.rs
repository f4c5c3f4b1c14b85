use thiserror::Error;

use crate::compare::RegimeBullet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Ids that do not resolve, duplicate ids, malformed records.
    #[error("malformed structure: {0}")]
    Structure(String),

    #[error("graph is disconnected ({components} components)")]
    Connectivity { components: usize },

    /// An enumeration would exceed the caller's budget. `count` is exact.
    #[error("budget exceeded: {count} items requested, cap is {cap}")]
    Budget { count: String, cap: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("argument error: {0}")]
    Argument(String),

    #[error("balancing fails modulo {modulus} at vertex {vertex}")]
    Unbalanced { vertex: String, modulus: u64 },

    #[error("regime not satisfied: {0}")]
    Regime(RegimeBullet),

    #[error("parse error: {0}")]
    Parse(String),
}
