use thiserror::Error;

use crate::graph::Label;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Label),
    #[error("duplicate vertex label {0}")]
    DuplicateVertex(Label),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Label),
    #[error("edge {0}-{1} is both black and red")]
    ConflictingEdge(Label, Label),
    #[error("vertex budget of {cap} exceeded (next layer would reach {needed} vertices)")]
    VertexBudget { cap: usize, needed: usize },
    #[error("size cap exceeded: {what} has {size}, cap is {cap}")]
    SizeCap { what: &'static str, size: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("layer/tree data inconsistent: {0}")]
    Inconsistent(String),
    #[error("graph is not chordal (induced cycle {0:?})")]
    NotChordal(Vec<Label>),
    #[error("treewidth {found} exceeds {allowed}")]
    TreewidthTooLarge { found: usize, allowed: usize },
    #[error("prefix exhausted: {0}")]
    PrefixExhausted(String),
    #[error("separator of size {size} exceeds the bound {bound}")]
    SeparatorLaw { size: usize, bound: usize },
    #[error("deadline exceeded")]
    Deadline,
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
