use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("embedding dimension must be positive")]
    ZeroDimension,
    #[error("vector for {word:?} has {found} of {expected} components")]
    WrongComponentCount { word: String, expected: usize, found: usize },
    #[error("vector for {word:?} has a non-finite component at position {position}")]
    NonFiniteComponent { word: String, position: usize },
    #[error("vector for {word:?} is all zeros")]
    ZeroVector { word: String },
    #[error("duplicate word {word:?}")]
    DuplicateWord { word: String },
    #[error("empty word token")]
    EmptyWord,
    #[error("vectors have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("cosine similarity is undefined for a zero-norm vector")]
    ZeroNorm,
    #[error("node {node} out of range for {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("similarity floor {0} outside (0, 1)")]
    InvalidFloor(f64),
    #[error("embedding store is empty")]
    EmptyStore,
    #[error("self-loop on node {node}")]
    SelfLoop { node: usize },
    #[error("duplicate edge between nodes {a} and {b}")]
    DuplicateEdge { a: usize, b: usize },
    #[error("edge weight {0} outside the allowed range")]
    WeightOutOfRange(f64),
    #[error("modularity is undefined on a graph without edges")]
    UndefinedModularity,
    #[error("partition covers {found} nodes but the graph has {expected}")]
    PartitionSizeMismatch { expected: usize, found: usize },
    #[error("community ids must be compact (0..{community_count}); found id {id}")]
    NonCompactCommunities { id: usize, community_count: usize },
    #[error("minimum gain {0} must be finite and non-negative")]
    InvalidMinGain(f64),
    #[error("similarity {0} outside (0, 1)")]
    SimilarityOutOfRange(f64),
    #[error("number of seed words per community must be positive")]
    InvalidTopR,
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: &'static str },
}
