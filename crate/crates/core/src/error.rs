use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("operation undefined on the empty graph")]
    EmptyGraph,

    /// An exhaustive search would exceed its configured size limit.
    #[error("{guard} guard exceeded: size {size} > limit {limit}")]
    SizeLimit {
        guard: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("graph generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("invalid probability {0}; expected 0 <= p <= 1")]
    InvalidProbability(f64),

    #[error("invalid game configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid strategy profile: {0}")]
    InvalidProfile(String),

    #[error("player {player} out of range ({count} players)")]
    PlayerOutOfRange { player: usize, count: usize },

    #[error("level-1 strategies are unavailable: state holds a fixed edge-fog graph")]
    NotProfileMode,

    #[error("edge-fog and job player counts differ (n1 = {n1}, n2 = {n2})")]
    UnequalSides { n1: usize, n2: usize },

    #[error("transit policy mismatch: {0}")]
    PolicyMismatch(String),

    #[error("no pure Nash equilibrium exists on this instance")]
    NoEquilibrium,

    #[error("price of anarchy undefined: {0}")]
    DegeneratePoa(String),

    #[error("argument outside formula domain: {0}")]
    Domain(String),

    #[error("degenerate bound: {0}")]
    DegenerateBound(String),
}
