//! Multi-level Louvain modularity maximization.
//!
//! Each level runs local-move sweeps until a sweep moves nothing, then
//! collapses communities into nodes and repeats on the aggregated graph.
//! The run ends at the first level whose local-move phase makes no move.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{aggregate, modularity, Adjacency, ModularityScore, Partition};
use crate::error::{Error, Result};

/// Guards against float-noise oscillation when `min_gain` is zero.
const MAX_SWEEPS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LouvainOptions {
    /// A move is applied only if it raises modularity by more than this.
    pub min_gain: f64,
    /// `None` visits nodes in ascending id order; `Some(seed)` shuffles the
    /// visit order of every level with a seeded generator.
    pub rng_seed: Option<u64>,
}

impl Default for LouvainOptions {
    fn default() -> Self {
        Self { min_gain: crate::DEFAULT_MIN_GAIN, rng_seed: None }
    }
}

/// State after one level's local-move phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSummary {
    pub level: usize,
    /// Nodes in the graph this level ran on.
    pub node_count: usize,
    /// Modularity after the level, maintained incrementally from move gains.
    pub modularity: f64,
    pub moves: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LouvainOutcome {
    /// Final partition of the input graph's nodes, communities numbered in
    /// order of their smallest member.
    pub partition: Partition,
    /// Modularity of `partition`, recomputed from the input graph.
    pub modularity: ModularityScore,
    pub levels: Vec<LevelSummary>,
}

pub fn louvain<A: Adjacency + ?Sized>(g: &A, options: &LouvainOptions) -> Result<LouvainOutcome> {
    let min_gain = options.min_gain;
    if !(min_gain.is_finite() && min_gain >= 0.0) {
        return Err(Error::InvalidMinGain(min_gain));
    }
    let n = g.node_count();
    let start = modularity(g, &Partition::singletons(g))?.value();
    let mut rng = options.rng_seed.map(ChaCha8Rng::seed_from_u64);

    let mut membership: Vec<usize> = (0..n).collect();
    let mut levels = Vec::new();
    let mut q = start;

    let mut result = local_move(g, min_gain, rng.as_mut());
    q += result.gain;
    levels.push(LevelSummary { level: 0, node_count: n, modularity: q, moves: result.moves });
    if result.moves > 0 {
        compose(&mut membership, &result.communities);
        let p = Partition::new(g, result.communities)?;
        let mut graph = aggregate(g, &p)?;
        loop {
            result = local_move(&graph, min_gain, rng.as_mut());
            if result.moves == 0 {
                break;
            }
            q += result.gain;
            levels.push(LevelSummary {
                level: levels.len(),
                node_count: graph.node_count(),
                modularity: q,
                moves: result.moves,
            });
            compose(&mut membership, &result.communities);
            let p = Partition::new(&graph, result.communities)?;
            graph = aggregate(&graph, &p)?;
        }
    }

    let partition = Partition::new(g, membership)?;
    let modularity = modularity(g, &partition)?;
    Ok(LouvainOutcome { partition, modularity, levels })
}

fn compose(membership: &mut [usize], communities: &[usize]) {
    for c in membership.iter_mut() {
        *c = communities[*c];
    }
}

struct LocalMove {
    /// Compact community per node, numbered by smallest member.
    communities: Vec<usize>,
    moves: usize,
    gain: f64,
}

fn local_move<A: Adjacency + ?Sized>(g: &A, min_gain: f64, rng: Option<&mut ChaCha8Rng>) -> LocalMove {
    let n = g.node_count();
    let degree: Vec<f64> = (0..n).map(|i| g.degree(i)).collect();
    let two_m: f64 = degree.iter().sum();
    let m = two_m / 2.0;

    let mut order: Vec<usize> = (0..n).collect();
    if let Some(rng) = rng {
        order.shuffle(rng);
    }

    let mut community: Vec<usize> = (0..n).collect();
    let mut tot = degree.clone();
    let mut link = vec![-1.0f64; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut moves = 0;
    let mut gain_sum = 0.0;

    for _ in 0..MAX_SWEEPS {
        let mut moved = false;
        for &i in &order {
            let d = community[i];
            let ki = degree[i];
            let (t, w) = g.adjacency(i);
            for (&j, &wij) in t.iter().zip(w) {
                let c = community[j as usize];
                if link[c] < 0.0 {
                    link[c] = 0.0;
                    touched.push(c);
                }
                link[c] += wij;
            }
            if link[d] < 0.0 {
                link[d] = 0.0;
                touched.push(d);
            }

            tot[d] -= ki;
            // Gain of inserting the (now isolated) node into community c.
            let insert = |c: usize, link_c: f64| link_c / m - tot[c] * ki / (2.0 * m * m);
            let stay = insert(d, link[d]);
            let mut best = d;
            let mut best_gain = stay;
            for &c in &touched {
                let gc = insert(c, link[c]);
                if gc > best_gain || (gc == best_gain && c < best && best != d) {
                    best = c;
                    best_gain = gc;
                }
            }
            let delta = best_gain - stay;
            if best != d && delta > min_gain {
                community[i] = best;
                tot[best] += ki;
                moves += 1;
                gain_sum += delta;
                moved = true;
            } else {
                tot[d] += ki;
            }

            for &c in &touched {
                link[c] = -1.0;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
    }

    LocalMove { communities: renumber(&community), moves, gain: gain_sum }
}

/// Relabels communities compactly in order of first appearance by node id.
fn renumber(community: &[usize]) -> Vec<usize> {
    let mut map = vec![usize::MAX; community.len()];
    let mut next = 0;
    community
        .iter()
        .map(|&c| {
            if map[c] == usize::MAX {
                map[c] = next;
                next += 1;
            }
            map[c]
        })
        .collect()
}
