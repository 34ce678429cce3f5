use thiserror::Error;

/// Errors raised by group construction, searches and the corpus layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("presentation is inconsistent: {0}")]
    InconsistentPresentation(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    UnsupportedOrder { order: usize, cap: usize },
    #[error("{what}: order {order} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("element {0} is not a central involution")]
    NotCentralInvolution(usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("matrix is singular")]
    Singular,
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("construction produced an invalid group: {0}")]
    ConstructionInvalid(String),
    #[error("subgroup is not central in the fusion system")]
    NotCentralInF,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
