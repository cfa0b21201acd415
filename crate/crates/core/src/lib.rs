//! Word similarity graphs from embedding vocabularies.
//!
//! The crate turns a vocabulary of word vectors into a pruned, undirected
//! similarity graph, partitions that graph with Louvain modularity
//! maximization, and ranks the words of each community by weighted
//! betweenness centrality so the most central words can serve as seeds for
//! unsupervised entity tagging.
//!
//! Everything here is pure computation over in-memory data and builds with
//! `no_std` + `alloc` when the default features are disabled. File formats,
//! configuration and the command-line front end live in the `wordgraph`
//! crate.
//!
//! Features:
//! - `std` (default): implements `std::error::Error` for [`Error`].
//! - `parallel` (default, implies `std`): neighbor queries and betweenness
//!   accumulation fan out over rayon. Results are bit-identical to the
//!   sequential build.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod agreement;
pub mod centrality;
pub mod community;
pub mod embedding;
mod error;
pub mod graph;
mod par;
pub mod seeds;
pub mod synthetic;

pub use agreement::adjusted_rand_index;
pub use centrality::{betweenness, distance_of, BetweennessOptions, CentralityTable, DistanceTransform};
pub use community::{
    aggregate, louvain, modularity, Adjacency, LevelSummary, LouvainOptions, LouvainOutcome,
    ModularityScore, Partition, WeightedGraph,
};
pub use embedding::{cosine_similarity, EmbeddingStore, SimilarNeighbor};
pub use error::{Error, Result};
pub use graph::{build_graph, SimilarityGraph, Subgraph};
pub use seeds::{extract_seeds, CommunitySeeds, SeedOptions, SeedReport, SeedWord};
pub use synthetic::{generate_synthetic, SyntheticSpec};

/// Default number of neighbors kept per word when building the graph.
pub const DEFAULT_K: usize = 25;
/// Default similarity floor for graph edges.
pub const DEFAULT_FLOOR: f64 = 0.5;
/// Default minimum modularity gain for a Louvain move.
pub const DEFAULT_MIN_GAIN: f64 = 1e-7;
/// Default number of seed words reported per community.
pub const DEFAULT_TOP_R: usize = 10;

/// Version of this crate, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
