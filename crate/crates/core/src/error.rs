use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Which solver budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    /// Brute force refused a graph above `max_brute_n` vertices.
    VertexCap,
    /// Branch and bound visited `node_budget` search nodes.
    NodeBudget,
    /// Branch and bound exceeded `time_budget`.
    TimeBudget,
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitKind::VertexCap => f.write_str("vertex cap"),
            LimitKind::NodeBudget => f.write_str("node budget"),
            LimitKind::TimeBudget => f.write_str("time budget"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertices {0} and {1} are adjacent, the set is not independent")]
    NotIndependent(usize, usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A budget ran out before the search finished. `lower_bound` is the size
    /// of the best independent set found so far; it is never reported as exact.
    #[error("{kind} exhausted; best independent set found has size {lower_bound}")]
    ResourceLimit { kind: LimitKind, lower_bound: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
