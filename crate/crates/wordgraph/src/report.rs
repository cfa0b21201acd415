//! JSON documents written by the pipeline stages.
//!
//! Every document carries `schema_version`; readers reject versions they do
//! not know.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use wordgraph_core::{LouvainOutcome, SimilarityGraph};

use crate::config::{PipelineConfig, TransformName};

pub const SCHEMA_VERSION: u32 = 1;

/// Words listed per community in the seed report; the sidecar TSV has all.
pub const MEMBERS_SAMPLE: usize = 20;

const HISTOGRAM_BINS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub schema_version: u32,
    pub nodes: usize,
    pub edges: usize,
    pub isolated: usize,
    pub mean_degree: f64,
    pub total_weight: f64,
    /// Edge counts over ten equal-width bins of (0, 1).
    pub weight_histogram: Vec<HistogramBin>,
    pub k: usize,
    pub floor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

impl GraphStats {
    pub fn of(g: &SimilarityGraph, k: usize, floor: f64) -> Self {
        let n = g.node_count();
        let mut counts = [0usize; HISTOGRAM_BINS];
        for (_, _, w) in g.edges() {
            let bin = ((w * HISTOGRAM_BINS as f64) as usize).min(HISTOGRAM_BINS - 1);
            counts[bin] += 1;
        }
        let weight_histogram = counts
            .iter()
            .enumerate()
            .map(|(i, &count)| HistogramBin {
                lower: i as f64 / HISTOGRAM_BINS as f64,
                upper: (i + 1) as f64 / HISTOGRAM_BINS as f64,
                count,
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            nodes: n,
            edges: g.edge_count(),
            isolated: (0..n).filter(|&v| g.degree(v) == 0).count(),
            mean_degree: if n == 0 { 0.0 } else { 2.0 * g.edge_count() as f64 / n as f64 },
            total_weight: g.total_weight(),
            weight_histogram,
            k,
            floor,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunitySummary {
    pub schema_version: u32,
    pub modularity: f64,
    pub community_count: usize,
    /// Sizes indexed by community id.
    pub community_sizes: Vec<usize>,
    pub levels: Vec<LevelRecord>,
    pub min_gain: f64,
    pub rng_seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub level: usize,
    pub node_count: usize,
    pub modularity: f64,
    pub moves: usize,
}

impl CommunitySummary {
    pub fn of(outcome: &LouvainOutcome, min_gain: f64, rng_seed: Option<u64>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            modularity: outcome.modularity.value(),
            community_count: outcome.partition.community_count(),
            community_sizes: outcome.partition.sizes(),
            levels: outcome
                .levels
                .iter()
                .map(|l| LevelRecord {
                    level: l.level,
                    node_count: l.node_count,
                    modularity: l.modularity,
                    moves: l.moves,
                })
                .collect(),
            min_gain,
            rng_seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedReportDoc {
    pub schema_version: u32,
    pub transform: TransformName,
    /// Whether `score` holds the normalized value.
    pub normalized: bool,
    pub communities: Vec<CommunityDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityDoc {
    pub id: usize,
    pub size: usize,
    pub sampled: bool,
    pub seeds: Vec<SeedDoc>,
    /// The first words of the community in sorted order.
    pub members_sample: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedDoc {
    pub word: String,
    pub score: f64,
    pub raw_score: f64,
    pub normalized_score: f64,
}

impl From<&wordgraph_core::SeedReport> for SeedReportDoc {
    fn from(r: &wordgraph_core::SeedReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            transform: r.transform.into(),
            normalized: r.normalized,
            communities: r
                .communities
                .iter()
                .map(|c| CommunityDoc {
                    id: c.id,
                    size: c.size,
                    sampled: c.sampled,
                    seeds: c
                        .seeds
                        .iter()
                        .map(|s| SeedDoc {
                            word: s.word.clone(),
                            score: s.score,
                            raw_score: s.raw_score,
                            normalized_score: s.normalized_score,
                        })
                        .collect(),
                    members_sample: c.members.iter().take(MEMBERS_SAMPLE).cloned().collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub config: PipelineConfig,
    pub versions: BTreeMap<String, String>,
    /// SHA-256 of the vectors file.
    pub input_sha256: String,
    /// SHA-256 of every artifact, keyed by file name.
    pub outputs: BTreeMap<String, String>,
    /// Wall-clock time per stage. The only field that differs between
    /// otherwise identical runs.
    pub timings_ms: BTreeMap<String, u64>,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(doc).expect("documents serialize infallibly");
    out.push(b'\n');
    out
}
