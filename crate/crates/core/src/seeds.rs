//! Per-community seed word ranking.
//!
//! Betweenness is computed on the subgraph induced by each community, so a
//! word's score reflects only the shortest paths between members of its own
//! community.

use alloc::string::String;
use alloc::vec::Vec;

use crate::centrality::{betweenness, BetweennessOptions, CentralityTable, DistanceTransform, SourceSample};
use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::SimilarityGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedOptions {
    /// Seed words reported per community.
    pub top_r: usize,
    pub transform: DistanceTransform,
    /// Report normalized scores in [`SeedWord::score`].
    pub normalize: bool,
    /// Switch to sampled betweenness for communities larger than this.
    /// `None` keeps every community exact.
    pub sampling: Option<SamplingPolicy>,
}

impl Default for SeedOptions {
    fn default() -> Self {
        Self {
            top_r: crate::DEFAULT_TOP_R,
            transform: DistanceTransform::OneMinus,
            normalize: false,
            sampling: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingPolicy {
    /// Communities with more nodes than this are sampled.
    pub cutoff: usize,
    pub sources: usize,
    pub seed: u64,
}

impl SamplingPolicy {
    pub const DEFAULT_CUTOFF: usize = 20_000;
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedWord {
    pub word: String,
    /// Node id in the input graph.
    pub node: usize,
    /// Normalized score when normalization was requested, raw otherwise.
    pub score: f64,
    pub raw_score: f64,
    pub normalized_score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommunitySeeds {
    pub id: usize,
    pub size: usize,
    /// Member words, sorted.
    pub members: Vec<String>,
    /// At most `top_r` words, best first; ties broken by word.
    pub seeds: Vec<SeedWord>,
    /// Whether betweenness was estimated from sampled sources.
    pub sampled: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedReport {
    pub transform: DistanceTransform,
    pub normalized: bool,
    pub communities: Vec<CommunitySeeds>,
}

pub fn extract_seeds(g: &SimilarityGraph, p: &Partition, options: &SeedOptions) -> Result<SeedReport> {
    if options.top_r == 0 {
        return Err(Error::InvalidTopR);
    }
    if p.len() != g.node_count() {
        return Err(Error::PartitionSizeMismatch { expected: g.node_count(), found: p.len() });
    }
    let mut communities = Vec::with_capacity(p.community_count());
    for (id, nodes) in p.members().into_iter().enumerate() {
        let sub = g.subgraph(&nodes)?;
        let n = nodes.len();
        let sample = options.sampling.filter(|s| n > s.cutoff).map(|s| SourceSample {
            sources: s.sources,
            seed: s.seed ^ id as u64,
        });
        let table = betweenness(
            &sub.graph,
            &BetweennessOptions { transform: options.transform, normalize: false, sample },
        );
        communities.push(rank(id, &sub.graph, &sub.original_ids, &table, options, sample.is_some()));
    }
    Ok(SeedReport { transform: options.transform, normalized: options.normalize, communities })
}

fn rank(
    id: usize,
    sub: &SimilarityGraph,
    original: &[usize],
    table: &CentralityTable,
    options: &SeedOptions,
    sampled: bool,
) -> CommunitySeeds {
    let n = sub.node_count();
    let factor = CentralityTable::normalization_factor(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        table.score(b).total_cmp(&table.score(a)).then_with(|| sub.labels()[a].cmp(&sub.labels()[b]))
    });
    let seeds = order
        .iter()
        .take(options.top_r)
        .map(|&v| {
            let raw = table.score(v);
            let normalized = if n < 3 { 0.0 } else { raw * factor };
            SeedWord {
                word: sub.labels()[v].clone(),
                node: original[v],
                score: if options.normalize { normalized } else { raw },
                raw_score: raw,
                normalized_score: normalized,
            }
        })
        .collect();
    let mut members = sub.labels().to_vec();
    members.sort();
    CommunitySeeds { id, size: n, members, seeds, sampled }
}
