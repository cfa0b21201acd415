//! Weighted betweenness centrality.
//!
//! Similarities are first turned into path lengths with a decreasing
//! [`DistanceTransform`], so that similar words sit close together. Scores
//! then follow Brandes' accumulation over Dijkstra shortest-path DAGs from
//! every source, with each unordered pair counted once and endpoints
//! excluded. Paths whose lengths agree within [`PATH_TOLERANCE`] are treated
//! as equally short and all of them enter the path counts.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::SimilarityGraph;
use crate::par;

/// Absolute tolerance below which two path lengths count as equal.
pub const PATH_TOLERANCE: f64 = 1e-12;

/// Sources processed sequentially per work unit. Fixed so the reduction
/// order, and therefore every bit of the result, does not depend on the
/// number of threads.
const SOURCE_BLOCK: usize = 32;

/// Maps a similarity in `(0, 1)` to a positive path length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceTransform {
    /// `1 - s`
    #[default]
    OneMinus,
    /// `1 / s`
    Reciprocal,
}

impl DistanceTransform {
    /// Length of an edge of similarity `s`. `s` must lie in `(0, 1)`.
    #[inline]
    pub fn apply(self, s: f64) -> f64 {
        match self {
            Self::OneMinus => 1.0 - s,
            Self::Reciprocal => 1.0 / s,
        }
    }
}

pub fn distance_of(similarity: f64, transform: DistanceTransform) -> Result<f64> {
    if !(similarity > 0.0 && similarity < 1.0) {
        return Err(Error::SimilarityOutOfRange(similarity));
    }
    Ok(transform.apply(similarity))
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BetweennessOptions {
    pub transform: DistanceTransform,
    /// Scale by `2 / ((n - 1)(n - 2))` (only when `n >= 3`).
    pub normalize: bool,
    /// Estimate from this many uniformly sampled sources instead of all of
    /// them. The estimate is scaled by `n / sources`.
    pub sample: Option<SourceSample>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSample {
    pub sources: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityTable {
    scores: Vec<f64>,
    normalized: bool,
}

impl CentralityTable {
    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn score(&self, node: usize) -> f64 {
        self.scores[node]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// Factor that maps raw scores to normalized ones for a graph of `n`
    /// nodes (1 when `n < 3`).
    pub fn normalization_factor(n: usize) -> f64 {
        if n < 3 {
            1.0
        } else {
            2.0 / ((n - 1) as f64 * (n - 2) as f64)
        }
    }
}

/// Betweenness of every node of `g`.
pub fn betweenness(g: &SimilarityGraph, options: &BetweennessOptions) -> CentralityTable {
    let n = g.node_count();
    let lengths = EdgeLengths::new(g, options.transform);

    let (sources, scale) = match options.sample {
        Some(s) if s.sources < n => {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(s.seed);
            let mut picked = rand::seq::index::sample(&mut rng, n, s.sources.max(1)).into_vec();
            picked.sort_unstable();
            let scale = n as f64 / picked.len() as f64;
            (picked, scale)
        }
        _ => ((0..n).collect(), 1.0),
    };

    // Blocks are reduced in index order, a bounded batch at a time so peak
    // memory stays at `BATCH * n` partial sums.
    const BATCH: usize = 64;
    let blocks = sources.len().div_ceil(SOURCE_BLOCK);
    let mut scores = vec![0.0; n];
    for first in (0..blocks).step_by(BATCH) {
        let partials = par::map_range(first..(first + BATCH).min(blocks), |b| {
            let lo = b * SOURCE_BLOCK;
            let hi = (lo + SOURCE_BLOCK).min(sources.len());
            let mut ws = Workspace::new(n);
            let mut acc = vec![0.0; n];
            for &s in &sources[lo..hi] {
                ws.accumulate(&lengths, s, &mut acc);
            }
            acc
        });
        for part in &partials {
            for (x, p) in scores.iter_mut().zip(part) {
                *x += p;
            }
        }
    }

    // Each unordered pair was seen from both endpoints.
    let mut factor = scale / 2.0;
    if options.normalize {
        factor *= CentralityTable::normalization_factor(n);
    }
    for x in &mut scores {
        *x *= factor;
    }
    CentralityTable { scores, normalized: options.normalize }
}

struct EdgeLengths<'a> {
    g: &'a SimilarityGraph,
    lengths: Vec<f64>,
    offsets: Vec<usize>,
}

impl<'a> EdgeLengths<'a> {
    fn new(g: &'a SimilarityGraph, transform: DistanceTransform) -> Self {
        let mut lengths = Vec::with_capacity(2 * g.edge_count());
        let mut offsets = Vec::with_capacity(g.node_count() + 1);
        offsets.push(0);
        for i in 0..g.node_count() {
            lengths.extend(g.adjacency(i).1.iter().map(|&s| transform.apply(s)));
            offsets.push(lengths.len());
        }
        Self { g, lengths, offsets }
    }

    fn row(&self, node: usize) -> (&[u32], &[f64]) {
        (self.g.adjacency(node).0, &self.lengths[self.offsets[node]..self.offsets[node + 1]])
    }
}

#[derive(Clone, Copy)]
struct Queued {
    dist: f64,
    node: usize,
}

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Queued {}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Queued {
    // Reversed: BinaryHeap is a max-heap and we want the closest node.
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

struct Workspace {
    dist: Vec<f64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    preds: Vec<Vec<u32>>,
    settled: Vec<bool>,
    /// Nodes reached by the previous source, reset before the next one.
    touched: Vec<usize>,
    /// Nodes in the order they were settled.
    stack: Vec<usize>,
    heap: BinaryHeap<Queued>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![f64::INFINITY; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            preds: vec![Vec::new(); n],
            settled: vec![false; n],
            touched: Vec::new(),
            stack: Vec::with_capacity(n),
            heap: BinaryHeap::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v] = f64::INFINITY;
            self.sigma[v] = 0.0;
            self.delta[v] = 0.0;
            self.preds[v].clear();
            self.settled[v] = false;
        }
        self.touched.clear();
        self.stack.clear();
        self.heap.clear();
    }

    /// Adds the dependencies of `source` on every other node to `acc`.
    fn accumulate(&mut self, lengths: &EdgeLengths<'_>, source: usize, acc: &mut [f64]) {
        self.reset();
        self.dist[source] = 0.0;
        self.sigma[source] = 1.0;
        self.touched.push(source);
        self.heap.push(Queued { dist: 0.0, node: source });

        while let Some(Queued { dist, node: v }) = self.heap.pop() {
            if self.settled[v] || dist > self.dist[v] {
                continue;
            }
            self.settled[v] = true;
            self.stack.push(v);
            let (t, len) = lengths.row(v);
            for (&w, &l) in t.iter().zip(len) {
                let w = w as usize;
                if self.settled[w] {
                    continue;
                }
                let alt = self.dist[v] + l;
                let dw = self.dist[w];
                if dw == f64::INFINITY {
                    self.touched.push(w);
                }
                if alt < dw - PATH_TOLERANCE {
                    self.dist[w] = alt;
                    self.sigma[w] = self.sigma[v];
                    self.preds[w].clear();
                    self.preds[w].push(v as u32);
                    self.heap.push(Queued { dist: alt, node: w });
                } else if (alt - dw).abs() <= PATH_TOLERANCE {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v as u32);
                }
            }
        }

        while let Some(w) = self.stack.pop() {
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in &self.preds[w] {
                let v = v as usize;
                self.delta[v] += self.sigma[v] * coeff;
            }
            if w != source {
                acc[w] += self.delta[w];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::string::String;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("n{i}")).collect()
    }

    fn raw(g: &SimilarityGraph) -> Vec<f64> {
        betweenness(g, &BetweennessOptions::default()).scores
    }

    #[test]
    fn distance_transforms() {
        assert!((distance_of(0.8, DistanceTransform::OneMinus).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(distance_of(0.5, DistanceTransform::OneMinus).unwrap(), 0.5);
        assert_eq!(distance_of(0.25, DistanceTransform::Reciprocal).unwrap(), 4.0);
        assert!(distance_of(1.0, DistanceTransform::OneMinus).is_err());
        assert!(distance_of(0.0, DistanceTransform::Reciprocal).is_err());
        assert!(distance_of(f64::NAN, DistanceTransform::Reciprocal).is_err());
    }

    #[test]
    fn path_of_three() {
        let g = SimilarityGraph::from_edges(labels(3), [(0, 1, 0.5), (1, 2, 0.5)]).unwrap();
        assert_eq!(raw(&g), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn star_center_carries_every_pair() {
        let g = SimilarityGraph::from_edges(labels(6), (1..6).map(|i| (0, i, 0.7))).unwrap();
        assert_eq!(raw(&g), vec![10.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let norm = betweenness(&g, &BetweennessOptions { normalize: true, ..Default::default() });
        assert!(norm.is_normalized());
        assert!((norm.score(0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn square_with_unequal_sides() {
        // a=0, b=1, c=2, d=3; a-b-c is shorter than a-d-c.
        let g = SimilarityGraph::from_edges(
            labels(4),
            [(0, 1, 0.9), (1, 2, 0.9), (2, 3, 0.6), (3, 0, 0.6)],
        )
        .unwrap();
        let s = raw(&g);
        // b: (a,c) fully. a: (b,d). c: (b,d) ties with a? b-a-d = 0.1+0.4,
        // b-c-d = 0.1+0.4, so the pair splits between a and c.
        assert!((s[1] - 1.0).abs() < 1e-12);
        assert!((s[0] - 0.5).abs() < 1e-12);
        assert!((s[2] - 0.5).abs() < 1e-12);
        assert_eq!(s[3], 0.0);
    }

    #[test]
    fn cycle_ties_are_split() {
        // Unit 4-cycle: opposite pairs have two shortest paths.
        let g = SimilarityGraph::from_edges(
            labels(4),
            [(0, 1, 0.5), (1, 2, 0.5), (2, 3, 0.5), (3, 0, 0.5)],
        )
        .unwrap();
        for x in raw(&g) {
            assert!((x - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn disconnected_and_tiny_graphs() {
        let g = SimilarityGraph::from_edges(labels(5), [(0, 1, 0.5), (3, 4, 0.5)]).unwrap();
        assert_eq!(raw(&g), vec![0.0; 5]);
        assert!(raw(&SimilarityGraph::empty()).is_empty());
    }

    #[test]
    fn full_sample_equals_exact() {
        let g = SimilarityGraph::from_edges(
            labels(5),
            [(0, 1, 0.3), (1, 2, 0.8), (2, 3, 0.4), (3, 4, 0.9), (0, 4, 0.2), (1, 3, 0.5)],
        )
        .unwrap();
        let exact = raw(&g);
        let sampled = betweenness(
            &g,
            &BetweennessOptions { sample: Some(SourceSample { sources: 5, seed: 1 }), ..Default::default() },
        );
        assert_eq!(sampled.scores(), &exact[..]);
        let half = betweenness(
            &g,
            &BetweennessOptions { sample: Some(SourceSample { sources: 3, seed: 1 }), ..Default::default() },
        );
        assert!(half.scores().iter().all(|x| *x >= 0.0));
    }
}
