use thiserror::Error;

/// Everything the library can reject.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge ({u}, {v}) has an endpoint out of range for {n} vertices")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("plan level {level} has width {found}, expected {expected}")]
    PlanWidth {
        level: usize,
        expected: usize,
        found: usize,
    },

    #[error("plan parse error on line {line}: {reason}")]
    PlanSyntax { line: usize, reason: String },

    #[error("plan enumeration would produce 2^{bits} plans, above the cap of {cap}")]
    PlanOverflow { bits: u64, cap: u64 },

    #[error("vertex {x} is not a descendant of vertex {y}")]
    NotDescendant { x: usize, y: usize },

    #[error("operation requires a pure clone plan")]
    NotIlt,

    #[error("vertex {0} is not in the base level")]
    NotBaseVertex(usize),

    #[error("invalid forcing chronology at step {step}: {reason}")]
    InvalidChronology { step: usize, reason: String },

    #[error("graph is disconnected; burning is only defined here for connected graphs")]
    Disconnected,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("config parse error on line {line}: {reason}")]
    Config { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
