use thiserror::Error;

/// Errors surfaced by graph construction, counting, and search routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter was outside the domain a routine supports
    /// (e.g. a cycle on fewer than 3 vertices, or `n = 0` lists).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A list assignment did not cover every vertex of the graph,
    /// or covered vertices the graph does not have.
    #[error("list assignment has {got} lists but the graph has {expected} vertices")]
    ListCountMismatch { expected: usize, got: usize },

    /// A vertex was assigned an empty list where a nonempty one is required.
    #[error("vertex {vertex} has an empty list")]
    EmptyList { vertex: usize },

    /// A pinned color was not available in the pinned vertex's list.
    #[error("pin ({vertex} -> {color}) is not in the vertex's list")]
    InvalidPin { vertex: usize, color: u32 },

    /// A vertex id was out of range for the graph it was used with.
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    /// An edge that was required to be a bridge is not one (or is absent).
    #[error("edge ({u}, {v}) is not a bridge of the graph")]
    NotABridge { u: usize, v: usize },

    /// A routine that requires a connected input graph received a
    /// disconnected one.
    #[error("graph is disconnected; this routine requires a connected graph")]
    Disconnected,

    /// A search gave up after visiting `visited` nodes without finishing.
    #[error("search budget exhausted after visiting {visited} nodes")]
    BudgetExceeded { visited: u64 },

    /// An exhaustive verification was requested at a size where it cannot
    /// complete in reasonable time.
    #[error("exhaustive verification infeasible: {0}")]
    VerificationTooLarge(String),

    /// Input JSON failed to parse.
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    /// Input JSON parsed but described an invalid object.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
