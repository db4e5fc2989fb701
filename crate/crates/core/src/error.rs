//! Error type shared by all pipeline stages.

use thiserror::Error;

/// Which configurable resource cap a computation ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    Elements,
    Orbit,
    Chains,
    Matrix,
    SubgroupElements,
    PGroupOrder,
}

impl CapKind {
    /// Configuration key of the cap, as spelled in `Caps`.
    pub fn config_key(self) -> &'static str {
        match self {
            CapKind::Elements => "max_elements",
            CapKind::Orbit => "max_orbit",
            CapKind::Chains => "max_chains",
            CapKind::Matrix => "max_matrix_entries",
            CapKind::SubgroupElements => "max_subgroup_elements",
            CapKind::PGroupOrder => "max_pgroup_order",
        }
    }

    fn describe(self) -> &'static str {
        match self {
            CapKind::Elements => "element enumeration",
            CapKind::Orbit => "orbit enumeration",
            CapKind::Chains => "maximal chain enumeration",
            CapKind::Matrix => "matrix entry",
            CapKind::SubgroupElements => "subgroup materialization",
            CapKind::PGroupOrder => "p-group order",
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{} cap exceeded: needed more than {limit} (config key {})", .cap.describe(), .cap.config_key())]
    CapExceeded { cap: CapKind, limit: u64 },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation image list: {reason}")]
    InvalidPermutation { reason: String },

    #[error("{value} is not prime")]
    NotPrime { value: u64 },

    #[error("prime {prime} does not divide the group order {order}")]
    PrimeDoesNotDivide { prime: u64, order: String },

    #[error("the poset is empty; the order complex needs at least one node")]
    EmptyPoset,

    #[error("homology degree {requested} exceeds the complex dimension {dimension}")]
    HomologyDegree { requested: usize, dimension: usize },

    #[error("element order overflow while computing a cycle length lcm")]
    ElementOrderOverflow,

    #[error("generator file, line {line}: {reason}")]
    GeneratorFile { line: usize, reason: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn cap(cap: CapKind, limit: u64) -> Self {
        Error::CapExceeded { cap, limit }
    }

    /// True for cap violations, false for everything else; the CLI maps the
    /// two classes to distinct exit codes.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
