//! The undirected word similarity graph.
//!
//! Adjacency is stored in compressed sparse row form with every edge present
//! once per direction, sorted by neighbor id. Both copies of an edge carry
//! the identical weight.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::embedding::EmbeddingStore;
use crate::error::{Error, Result};

/// Smallest weight `build_graph` emits. Weights are clamped into
/// `[MIN_WEIGHT, MAX_WEIGHT]` so they survive a six-decimal round trip
/// through the edge list format and stay inside `(0, 1)`.
pub const MIN_WEIGHT: f64 = 1e-6;
/// Largest weight `build_graph` emits (see [`MIN_WEIGHT`]).
pub const MAX_WEIGHT: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityGraph {
    labels: Vec<String>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
}

/// An induced subgraph together with the parent ids of its nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Subgraph {
    pub graph: SimilarityGraph,
    /// `original_ids[i]` is the parent node id of subgraph node `i`.
    pub original_ids: Vec<usize>,
}

impl SimilarityGraph {
    /// Builds a graph from undirected edges `(a, b, weight)`.
    ///
    /// Each edge may be given in either orientation but only once. Weights
    /// must lie strictly between 0 and 1.
    pub fn from_edges<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let n = labels.len();
        if n > u32::MAX as usize {
            return Err(Error::InvalidParameter {
                name: "labels",
                reason: "too many nodes for 32-bit ids",
            });
        }
        let mut canon = Vec::new();
        for (a, b, w) in edges {
            for node in [a, b] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, node_count: n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { node: a });
            }
            if !(w > 0.0 && w < 1.0) {
                return Err(Error::WeightOutOfRange(w));
            }
            canon.push((a.min(b), a.max(b), w));
        }
        canon.sort_by_key(|x| (x.0, x.1));
        if let Some(pair) = canon.windows(2).find(|p| (p[0].0, p[0].1) == (p[1].0, p[1].1)) {
            return Err(Error::DuplicateEdge { a: pair[0].0, b: pair[0].1 });
        }
        Ok(Self::from_canonical(labels, &canon))
    }

    /// `edges` must be sorted, deduplicated and have `a < b`.
    fn from_canonical(labels: Vec<String>, edges: &[(usize, usize, f64)]) -> Self {
        let n = labels.len();
        let mut degree = vec![0usize; n];
        for &(a, b, _) in edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = *offsets.last().unwrap();
        let mut targets = vec![0u32; total];
        let mut weights = vec![0.0; total];
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        // Visiting edges sorted by (a, b) fills every row in ascending
        // neighbor order: row x receives its smaller neighbors (as b) before
        // its larger ones (as a), each group already ascending.
        for &(a, b, w) in edges {
            targets[cursor[a]] = b as u32;
            weights[cursor[a]] = w;
            cursor[a] += 1;
            targets[cursor[b]] = a as u32;
            weights[cursor[b]] = w;
            cursor[b] += 1;
        }
        let g = Self { labels, offsets, targets, weights };
        debug_assert!(g.is_consistent());
        g
    }

    pub fn empty() -> Self {
        Self { labels: Vec::new(), offsets: vec![0], targets: Vec::new(), weights: Vec::new() }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> Option<&str> {
        self.labels.get(node).map(String::as_str)
    }

    /// Neighbor ids and weights of `node`, sorted by neighbor id.
    ///
    /// # Panics
    /// If `node` is out of range.
    pub fn adjacency(&self, node: usize) -> (&[u32], &[f64]) {
        let r = self.offsets[node]..self.offsets[node + 1];
        (&self.targets[r.clone()], &self.weights[r])
    }

    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (t, w) = self.adjacency(node);
        t.iter().map(|&j| j as usize).zip(w.iter().copied())
    }

    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    /// Every edge once as `(a, b, weight)` with `a < b`, in `(a, b)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.node_count()).flat_map(move |a| {
            self.neighbors(a).filter(move |&(b, _)| b > a).map(move |(b, w)| (a, b, w))
        })
    }

    /// `k_i`: the sum of the weights of edges incident on `node`.
    pub fn weighted_degree(&self, node: usize) -> Result<f64> {
        if node >= self.node_count() {
            return Err(Error::NodeOutOfRange { node, node_count: self.node_count() });
        }
        Ok(self.adjacency(node).1.iter().sum())
    }

    /// `m`: the sum of all edge weights, each edge counted once.
    pub fn total_weight(&self) -> f64 {
        self.edges().map(|(_, _, w)| w).sum()
    }

    /// Checks the structural invariants: symmetric adjacency with equal
    /// weights, sorted rows, no self-loops or parallel edges, weights in
    /// `(0, 1)`.
    pub fn is_consistent(&self) -> bool {
        let n = self.node_count();
        if self.offsets.len() != n + 1 || self.targets.len() % 2 != 0 {
            return false;
        }
        (0..n).all(|i| {
            let (t, w) = self.adjacency(i);
            t.windows(2).all(|p| p[0] < p[1])
                && t.iter().zip(w).all(|(&j, &wij)| {
                    let j = j as usize;
                    j != i
                        && j < n
                        && wij > 0.0
                        && wij < 1.0
                        && self.edge_weight(j, i) == Some(wij)
                })
        })
    }

    /// Weight of edge `{a, b}`, if present.
    pub fn edge_weight(&self, a: usize, b: usize) -> Option<f64> {
        if a >= self.node_count() || b >= self.node_count() {
            return None;
        }
        let (t, w) = self.adjacency(a);
        t.binary_search(&(b as u32)).ok().map(|p| w[p])
    }

    /// The subgraph induced by `nodes`, re-indexed compactly in ascending
    /// order of parent id. Duplicate ids in `nodes` are ignored.
    pub fn subgraph(&self, nodes: &[usize]) -> Result<Subgraph> {
        let n = self.node_count();
        let mut ids = nodes.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if let Some(&bad) = ids.iter().find(|&&v| v >= n) {
            return Err(Error::NodeOutOfRange { node: bad, node_count: n });
        }
        let mut local = vec![u32::MAX; n];
        for (i, &v) in ids.iter().enumerate() {
            local[v] = i as u32;
        }
        let mut edges = Vec::new();
        for (i, &v) in ids.iter().enumerate() {
            for (u, w) in self.neighbors(v) {
                let j = local[u];
                if j != u32::MAX && (j as usize) > i {
                    edges.push((i, j as usize, w));
                }
            }
        }
        edges.sort_by_key(|x| (x.0, x.1));
        let labels = ids.iter().map(|&v| self.labels[v].clone()).collect();
        Ok(Subgraph { graph: Self::from_canonical(labels, &edges), original_ids: ids })
    }
}

/// Builds the similarity graph over the whole vocabulary.
///
/// Edge `{i, j}` exists when `j` is among the top `k` neighbors of `i` or
/// `i` is among the top `k` of `j` (union symmetrization). Weights are the
/// cosine similarities, clamped into `[MIN_WEIGHT, MAX_WEIGHT]`. Words with
/// no qualifying neighbor stay in the graph as isolated nodes.
pub fn build_graph(store: &EmbeddingStore, k: usize, floor: f64) -> Result<SimilarityGraph> {
    if store.is_empty() {
        return Err(Error::EmptyStore);
    }
    let lists = store.all_top_k(k, floor)?;
    let mut edges: Vec<(usize, usize, f64)> = Vec::with_capacity(lists.iter().map(Vec::len).sum());
    for (i, list) in lists.iter().enumerate() {
        for nb in list {
            let w = nb.similarity.clamp(MIN_WEIGHT, MAX_WEIGHT);
            edges.push((i.min(nb.index), i.max(nb.index), w));
        }
    }
    edges.sort_unstable_by_key(|x| (x.0, x.1));
    // Both directions see the same similarity bits, so dropping the
    // duplicate loses nothing.
    edges.dedup_by(|x, y| (x.0, x.1) == (y.0, y.1));
    Ok(SimilarityGraph::from_canonical(store.words().to_vec(), &edges))
}
