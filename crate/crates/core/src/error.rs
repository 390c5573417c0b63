use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("ring mismatch: Z/{left} vs Z/{right}")]
    RingMismatch { left: u64, right: u64 },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error(
        "ill-defined morphism at entry ({row}, {col}): {entry} * {source_order} is not 0 mod {target_order}"
    )]
    IllDefined {
        row: usize,
        col: usize,
        entry: u64,
        source_order: u64,
        target_order: u64,
    },

    #[error("square does not commute: {0}")]
    NotCommutative(String),

    #[error("diagram is not functorial: {0}")]
    NotFunctorial(String),

    #[error("diagram is not directed: {0}")]
    NotDirected(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error("budget exceeded after adjoining {adjoined} generators")]
    BudgetExceeded {
        adjoined: usize,
        partial: Box<crate::rep_a2::SubRep>,
    },

    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
