//! Violation reports shared by the graph and contact validators.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Disconnected { components: usize },
    GenusSum { expected: u64, found: u64 },
    DegreeSum { expected: i64, found: i64 },
    LegIndices { detail: String },
    /// Some vertex subset has |sum of degrees| >= r/2.
    Window { subset: Vec<String>, sum: i64, r: u64, violating_subsets: u64 },
    RootVsDegree { r: u64, d: i64 },
    CoarseNotIntegral { leg: usize },
    SourceDoesNotDivide { leg: usize, s: u64, r: u64 },
    CoarseTimesSource { leg: usize, c: String, s: u64, r: u64 },
    Coprimality { leg: usize, s: u64, expected: String },
    SizeVsContacts { r: u64, max_c: String },
    ContactSum { d: i64, sum_c: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Disconnected { components } => {
                write!(f, "graph has {components} connected components")
            }
            Violation::GenusSum { expected, found } => {
                write!(f, "genus labels plus b1 sum to {found}, expected {expected}")
            }
            Violation::DegreeSum { expected, found } => {
                write!(f, "vertex degrees sum to {found}, expected {expected}")
            }
            Violation::LegIndices { detail } => write!(f, "leg indices: {detail}"),
            Violation::Window { subset, sum, r, violating_subsets } => write!(
                f,
                "degree window violated: subset {subset:?} has sum {sum} outside (-{r}/2, {r}/2) \
                 ({violating_subsets} violating subsets)"
            ),
            Violation::RootVsDegree { r, d } => write!(f, "need r > 2d, got r = {r}, d = {d}"),
            Violation::CoarseNotIntegral { leg } => {
                write!(f, "leg {leg}: r * a is not a nonnegative integer")
            }
            Violation::SourceDoesNotDivide { leg, s, r } => {
                write!(f, "leg {leg}: s = {s} does not divide r = {r}")
            }
            Violation::CoarseTimesSource { leg, c, s, r } => {
                write!(f, "leg {leg}: r = {r} does not divide c*s = {c}*{s}")
            }
            Violation::Coprimality { leg, s, expected } => {
                write!(f, "leg {leg}: r/gcd(r,c) = {expected} but s = {s}")
            }
            Violation::SizeVsContacts { r, max_c } => {
                write!(f, "need r > max c_i, got r = {r}, max c_i = {max_c}")
            }
            Violation::ContactSum { d, sum_c } => {
                write!(f, "coarse degree d = {d} differs from sum of c_i = {sum_c}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Set when an exhaustive check was replaced by a cheaper approximation.
    pub partial: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.partial |= other.partial;
    }
}
