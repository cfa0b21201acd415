//! Weighted modularity, partitions and Louvain community detection.
//!
//! Modularity follows the usual weighted definition
//!
//! ```text
//! Q = 1/(2m) * sum_ij [ w_ij - k_i k_j / (2m) ] * delta(c_i, c_j)
//! ```
//!
//! evaluated per community as `sum_c [ in_c / 2m - (tot_c / 2m)^2 ]`, where
//! `in_c` is twice the intra-community weight and `tot_c` the sum of member
//! degrees. Self-loops (which only appear on aggregated graphs) contribute
//! twice their weight to the owning node's degree and to `in_c`.

mod louvain;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::SimilarityGraph;

pub use louvain::{louvain, LevelSummary, LouvainOptions, LouvainOutcome};

/// Read access to an undirected weighted graph in CSR form.
///
/// Each edge appears in the rows of both endpoints. Self-loops are not part
/// of the rows and are reported by [`self_loop`](Adjacency::self_loop).
pub trait Adjacency {
    fn node_count(&self) -> usize;
    fn adjacency(&self, node: usize) -> (&[u32], &[f64]);
    fn self_loop(&self, _node: usize) -> f64 {
        0.0
    }

    /// Weighted degree, with a self-loop counted twice.
    fn degree(&self, node: usize) -> f64 {
        self.adjacency(node).1.iter().sum::<f64>() + 2.0 * self.self_loop(node)
    }
}

impl Adjacency for SimilarityGraph {
    fn node_count(&self) -> usize {
        SimilarityGraph::node_count(self)
    }

    fn adjacency(&self, node: usize) -> (&[u32], &[f64]) {
        SimilarityGraph::adjacency(self, node)
    }
}

/// A weighted graph with optional self-loops and arbitrary positive weights.
///
/// This is the graph Louvain works on after the first level: one node per
/// community of the previous level, a self-loop carrying the community's
/// internal weight and summed inter-community edges.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
    loops: Vec<f64>,
}

impl WeightedGraph {
    /// Builds a graph from undirected edges and per-node self-loop weights.
    /// Edges may repeat; repeated edges are summed.
    pub fn from_edges<I>(node_count: usize, edges: I, loops: Vec<f64>) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if loops.len() != node_count {
            return Err(Error::PartitionSizeMismatch { expected: node_count, found: loops.len() });
        }
        if let Some(&w) = loops.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::WeightOutOfRange(w));
        }
        let mut canon = Vec::new();
        for (a, b, w) in edges {
            for node in [a, b] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange { node, node_count });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { node: a });
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::WeightOutOfRange(w));
            }
            canon.push((a.min(b), a.max(b), w));
        }
        Ok(Self::from_unsorted(node_count, canon, loops))
    }

    /// `edges` must have `a < b`; they are sorted (stably) and merged here.
    fn from_unsorted(n: usize, mut edges: Vec<(usize, usize, f64)>, loops: Vec<f64>) -> Self {
        edges.sort_by_key(|x| (x.0, x.1));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(edges.len());
        for (a, b, w) in edges {
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (a, b) => last.2 += w,
                _ => merged.push((a, b, w)),
            }
        }
        let mut degree = vec![0usize; n];
        for &(a, b, _) in &merged {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = offsets[n];
        let mut targets = vec![0u32; total];
        let mut weights = vec![0.0; total];
        let mut cursor = offsets[..n].to_vec();
        for &(a, b, w) in &merged {
            targets[cursor[a]] = b as u32;
            weights[cursor[a]] = w;
            cursor[a] += 1;
            targets[cursor[b]] = a as u32;
            weights[cursor[b]] = w;
            cursor[b] += 1;
        }
        Self { offsets, targets, weights, loops }
    }

    /// Copies any adjacency into an owned weighted graph.
    pub fn from_adjacency<A: Adjacency + ?Sized>(g: &A) -> Self {
        let n = g.node_count();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        for i in 0..n {
            let (t, w) = g.adjacency(i);
            targets.extend_from_slice(t);
            weights.extend_from_slice(w);
            offsets.push(targets.len());
        }
        let loops = (0..n).map(|i| g.self_loop(i)).collect();
        Self { offsets, targets, weights, loops }
    }

    /// Every non-loop edge once as `(a, b, weight)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.loops.len()).flat_map(move |a| {
            let (t, w) = self.adjacency(a);
            t.iter()
                .zip(w)
                .filter(move |(&b, _)| b as usize > a)
                .map(move |(&b, &w)| (a, b as usize, w))
        })
    }

    pub fn self_loops(&self) -> &[f64] {
        &self.loops
    }

    /// `m`: ordinary edges once plus self-loops once.
    pub fn total_weight(&self) -> f64 {
        self.edges().map(|e| e.2).sum::<f64>() + self.loops.iter().sum::<f64>()
    }
}

impl Adjacency for WeightedGraph {
    fn node_count(&self) -> usize {
        self.loops.len()
    }

    fn adjacency(&self, node: usize) -> (&[u32], &[f64]) {
        let r = self.offsets[node]..self.offsets[node + 1];
        (&self.targets[r.clone()], &self.weights[r])
    }

    fn self_loop(&self, node: usize) -> f64 {
        self.loops[node]
    }
}

/// Assignment of every node to exactly one community.
///
/// Community ids are compact (`0..community_count`). The per-community sums
/// are computed against the graph the partition was built for.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    assignment: Vec<usize>,
    community_count: usize,
    sigma_tot: Vec<f64>,
    sigma_in: Vec<f64>,
}

impl Partition {
    pub fn new<A: Adjacency + ?Sized>(g: &A, assignment: Vec<usize>) -> Result<Self> {
        let n = g.node_count();
        if assignment.len() != n {
            return Err(Error::PartitionSizeMismatch { expected: n, found: assignment.len() });
        }
        let community_count = assignment.iter().max().map_or(0, |&c| c + 1);
        let mut used = vec![false; community_count];
        for &c in &assignment {
            used[c] = true;
        }
        if let Some(id) = used.iter().position(|u| !u) {
            return Err(Error::NonCompactCommunities { id, community_count });
        }
        let (sigma_tot, sigma_in) = community_sums(g, &assignment, community_count);
        Ok(Self { assignment, community_count, sigma_tot, sigma_in })
    }

    /// Every node in its own community.
    pub fn singletons<A: Adjacency + ?Sized>(g: &A) -> Self {
        Self::new(g, (0..g.node_count()).collect()).expect("singleton ids are compact")
    }

    /// All nodes in community 0.
    pub fn all_in_one<A: Adjacency + ?Sized>(g: &A) -> Self {
        Self::new(g, vec![0; g.node_count()]).expect("a single id is compact")
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn community_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Per community, the sum of member degrees.
    pub fn sigma_tot(&self) -> &[f64] {
        &self.sigma_tot
    }

    /// Per community, twice the intra-community edge weight.
    pub fn sigma_in(&self) -> &[f64] {
        &self.sigma_in
    }

    /// Members of each community in ascending node order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.community_count];
        for (node, &c) in self.assignment.iter().enumerate() {
            out[c].push(node);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.community_count];
        for &c in &self.assignment {
            out[c] += 1;
        }
        out
    }
}

fn community_sums<A: Adjacency + ?Sized>(g: &A, assignment: &[usize], count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut tot = vec![0.0; count];
    let mut inside = vec![0.0; count];
    for (i, &c) in assignment.iter().enumerate() {
        let (t, w) = g.adjacency(i);
        let mut deg = 0.0;
        for (&j, &wij) in t.iter().zip(w) {
            deg += wij;
            if assignment[j as usize] == c {
                inside[c] += wij;
            }
        }
        let l = g.self_loop(i);
        tot[c] += deg + 2.0 * l;
        inside[c] += 2.0 * l;
    }
    (tot, inside)
}

/// A modularity value; always within `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ModularityScore(f64);

impl ModularityScore {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Modularity of `p` on `g`, recomputed from the graph.
pub fn modularity<A: Adjacency + ?Sized>(g: &A, p: &Partition) -> Result<ModularityScore> {
    let n = g.node_count();
    if p.len() != n {
        return Err(Error::PartitionSizeMismatch { expected: n, found: p.len() });
    }
    let (tot, inside) = community_sums(g, &p.assignment, p.community_count);
    let two_m: f64 = tot.iter().sum();
    if !(two_m > 0.0) {
        return Err(Error::UndefinedModularity);
    }
    Ok(ModularityScore(q_from_sums(&tot, &inside, two_m)))
}

pub(crate) fn q_from_sums(tot: &[f64], inside: &[f64], two_m: f64) -> f64 {
    tot.iter()
        .zip(inside)
        .map(|(&t, &i)| {
            let a = t / two_m;
            i / two_m - a * a
        })
        .sum::<f64>()
        .clamp(-1.0, 1.0)
}

/// Collapses every community of `p` into a single node.
///
/// Inter-community edges are summed; each community's internal weight
/// becomes the self-loop of its node, so the total weight `m` and the
/// modularity of the partition are preserved.
pub fn aggregate<A: Adjacency + ?Sized>(g: &A, p: &Partition) -> Result<WeightedGraph> {
    let n = g.node_count();
    if p.len() != n {
        return Err(Error::PartitionSizeMismatch { expected: n, found: p.len() });
    }
    let c = p.community_count;
    let mut loops = vec![0.0; c];
    let mut cross = Vec::new();
    for i in 0..n {
        let ci = p.assignment[i];
        loops[ci] += g.self_loop(i);
        let (t, w) = g.adjacency(i);
        for (&j, &wij) in t.iter().zip(w) {
            let j = j as usize;
            if j <= i {
                continue;
            }
            let cj = p.assignment[j];
            if ci == cj {
                loops[ci] += wij;
            } else {
                cross.push((ci.min(cj), ci.max(cj), wij));
            }
        }
    }
    Ok(WeightedGraph::from_unsorted(c, cross, loops))
}
