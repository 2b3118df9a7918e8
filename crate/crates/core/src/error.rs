use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("cover relation is cyclic (through `{0}`)")]
    CyclicCovers(String),
    #[error("order has no unique {0}")]
    NoBoundedStructure(&'static str),
    #[error("not a lattice: `{0}` and `{1}` have no unique {2}")]
    NotALattice(String, String, &'static str),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("lattice axiom violated: {0}")]
    AxiomViolation(String),
    #[error("size guard exceeded: {what} is {actual}, limit {limit}")]
    SizeGuard {
        what: &'static str,
        actual: u128,
        limit: u128,
    },
    #[error("operands belong to different lattices")]
    LatticeMismatch,
    #[error("syntax error at {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("name `{0}` is both a variable and a lattice element")]
    NameCollision(String),
    #[error("arity violation: {0}")]
    ArityViolation(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("capacity is not normalized: v(empty) must be bottom and v(full) top")]
    CapacityNotNormalized,
    #[error("capacity is not monotone: v({lower}) > v({upper})")]
    CapacityNotMonotone { lower: String, upper: String },
    #[error("set family is empty")]
    EmptyFamily,
    #[error("set family contains the empty set")]
    EmptyMember,
    #[error("pair is not a cone: {0}")]
    NotACone(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{path}:{line}: {message}")]
    Format {
        path: String,
        line: usize,
        message: String,
    },
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("internal consistency check failed: {0}")]
    RouteDisagreement(String),
}

pub(crate) fn guard(what: &'static str, actual: u128, limit: u128) -> Result<()> {
    if actual > limit {
        Err(Error::SizeGuard {
            what,
            actual,
            limit,
        })
    } else {
        Ok(())
    }
}
