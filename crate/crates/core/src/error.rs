use thiserror::Error;

/// Which configurable limit was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Subspaces,
    Points,
    Cliques,
    Subsets,
    Search,
}

impl std::fmt::Display for Budget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Budget::Subspaces => "subspaces",
            Budget::Points => "points",
            Budget::Cliques => "cliques",
            Budget::Subsets => "subsets",
            Budget::Search => "search",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("modulus is reducible over GF({p}): {modulus:?}")]
    ReducibleModulus { p: u32, modulus: Vec<u32> },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{budget} budget exceeded: need {needed}, limit {limit} (raise BLOCKFORGE_BUDGET_{env} or use sampled mode)", env = budget.to_string().to_uppercase())]
    BudgetExceeded { budget: Budget, needed: u128, limit: u128 },
    #[error("graph is not regular")]
    Irregular,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("sets are not pairwise disjoint")]
    NotDisjoint,
    #[error("hypergraph is not {0}-bounded")]
    NotBounded(usize),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("random search exhausted after {0} tries")]
    TriesExhausted(usize),
    #[error("construction produced no edges: {0}")]
    EmptyConstruction(String),
    #[error("consistency violation: {0}")]
    Consistency(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
