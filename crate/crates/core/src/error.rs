use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {n} out of range (supported: {min}..={max})")]
    DimensionOutOfRange { n: u32, min: u32, max: u32 },
    #[error("vertex {label} is not a vertex of LTQ_{n}")]
    InvalidVertex { label: u64, n: u32 },
    #[error("the two vertices must be distinct")]
    SameVertex,
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("g = {g} out of range for n = {n}: {reason}")]
    GOutOfRange { g: u32, n: u32, reason: &'static str },
    #[error("the two fault sets must be distinct")]
    EqualSets,
    #[error("vertex set width {found} does not match dimension {expected}")]
    WidthMismatch { expected: u32, found: u32 },
    #[error("syndrome does not match the graph: {0}")]
    DomainMismatch(String),
    #[error("search would examine {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("exhaustive search is only supported for n <= {max}, got n = {n}")]
    SearchDimension { n: u32, max: u32 },
    #[error("(n = {n}, g = {g}) is outside the theorem hypotheses for model {model}")]
    OutOfTheoremRange { n: u32, g: u32, model: String },
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by the search budget or search size limits.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::SearchDimension { .. })
    }
}
