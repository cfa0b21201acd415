//! Brute-force oracles and graph fixtures for the wordgraph test suites.
//!
//! Nothing here calls into the algorithms it is used to check: modularity is
//! a dense double sum, optima come from enumerating every set partition,
//! betweenness enumerates shortest paths explicitly from Floyd-Warshall
//! distances, and the reference Louvain recomputes modularity from scratch
//! for every candidate move.

use rand::Rng;
use wordgraph_core::SimilarityGraph;

pub type Edge = (usize, usize, f64);

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("n{i:02}")).collect()
}

pub fn graph(n: usize, edges: &[Edge]) -> SimilarityGraph {
    SimilarityGraph::from_edges(labels(n), edges.iter().copied()).expect("valid fixture")
}

pub fn edge_list(g: &SimilarityGraph) -> Vec<Edge> {
    g.edges().collect()
}

/// Dense symmetric weight matrix.
pub fn dense(n: usize, edges: &[Edge]) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; n]; n];
    for &(i, j, w) in edges {
        a[i][j] += w;
        a[j][i] += w;
    }
    a
}

/// `Q = 1/(2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j)` as a literal
/// double sum over all node pairs.
pub fn double_sum_modularity(n: usize, edges: &[Edge], assignment: &[usize]) -> f64 {
    let a = dense(n, edges);
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if assignment[i] == assignment[j] {
                q += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Every set partition of `n` items as a restricted growth string, so
/// community ids are compact and numbered by first appearance.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max + 1 {
            if i == 0 && c > 0 {
                break;
            }
            cur.push(c);
            rec(i + 1, n, if i == 0 { 0 } else { max.max(c) }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    rec(0, n, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Highest modularity over all set partitions, with one maximizing
/// partition.
pub fn exhaustive_optimum(n: usize, edges: &[Edge]) -> (f64, Vec<usize>) {
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for p in set_partitions(n) {
        let q = double_sum_modularity(n, edges, &p);
        if q > best.0 {
            best = (q, p);
        }
    }
    best
}

/// All-pairs shortest path lengths.
pub fn floyd_warshall(n: usize, lengths: &[Edge]) -> Vec<Vec<f64>> {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(a, b, l) in lengths {
        d[a][b] = d[a][b].min(l);
        d[b][a] = d[b][a].min(l);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Betweenness by explicit enumeration of every shortest path between every
/// unordered pair, with edge length `transform(similarity)`.
pub fn naive_betweenness(n: usize, edges: &[Edge], transform: impl Fn(f64) -> f64) -> Vec<f64> {
    const TOL: f64 = 1e-10;
    let lengths: Vec<Edge> = edges.iter().map(|&(a, b, w)| (a, b, transform(w))).collect();
    let d = floyd_warshall(n, &lengths);
    let mut adj = vec![Vec::new(); n];
    for &(a, b, l) in &lengths {
        adj[a].push((b, l));
        adj[b].push((a, l));
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        u: usize,
        s: usize,
        t: usize,
        adj: &[Vec<(usize, f64)>],
        d: &[Vec<f64>],
        path: &mut Vec<usize>,
        total: &mut f64,
        through: &mut [f64],
    ) {
        if u == t {
            *total += 1.0;
            for &v in &path[1..path.len() - 1] {
                through[v] += 1.0;
            }
            return;
        }
        for &(v, l) in &adj[u] {
            if (d[s][u] + l + d[v][t] - d[s][t]).abs() <= TOL && !path.contains(&v) {
                path.push(v);
                walk(v, s, t, adj, d, path, total, through);
                path.pop();
            }
        }
    }

    let mut scores = vec![0.0; n];
    for s in 0..n {
        for t in (s + 1)..n {
            if !d[s][t].is_finite() {
                continue;
            }
            let mut total = 0.0;
            let mut through = vec![0.0; n];
            walk(s, s, t, &adj, &d, &mut vec![s], &mut total, &mut through);
            for v in 0..n {
                scores[v] += through[v] / total;
            }
        }
    }
    scores
}

/// Louvain as literally as possible: each candidate move is scored by
/// recomputing the full double-sum modularity of the original graph.
pub fn naive_louvain(n: usize, edges: &[Edge]) -> (f64, Vec<usize>) {
    let a = dense(n, edges);
    // Supernodes: groups of original nodes that move together.
    let mut groups: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut assignment: Vec<usize> = (0..n).collect();
    loop {
        let g = groups.len();
        let mut comm: Vec<usize> = (0..g).collect();
        let flat = |comm: &[usize]| {
            let mut out = vec![0; n];
            for (gi, members) in groups.iter().enumerate() {
                for &v in members {
                    out[v] = comm[gi];
                }
            }
            out
        };
        let group_adjacent = |x: usize, y: usize| {
            groups[x].iter().any(|&u| groups[y].iter().any(|&v| a[u][v] > 0.0))
        };
        let mut any = false;
        loop {
            let mut moved = false;
            for x in 0..g {
                let current = double_sum_modularity(n, edges, &flat(&comm));
                let mut best = (comm[x], current);
                let mut targets: Vec<usize> =
                    (0..g).filter(|&y| y != x && group_adjacent(x, y)).map(|y| comm[y]).collect();
                targets.sort_unstable();
                targets.dedup();
                for c in targets {
                    let mut trial = comm.clone();
                    trial[x] = c;
                    let q = double_sum_modularity(n, edges, &flat(&trial));
                    if q > best.1 + 1e-10 {
                        best = (c, q);
                    }
                }
                if best.0 != comm[x] {
                    comm[x] = best.0;
                    moved = true;
                    any = true;
                }
            }
            if !moved {
                break;
            }
        }
        if !any {
            break;
        }
        assignment = flat(&comm);
        let mut merged: Vec<Vec<usize>> = Vec::new();
        let mut ids: Vec<usize> = comm.clone();
        ids.sort_unstable();
        ids.dedup();
        for c in ids {
            let mut members: Vec<usize> = (0..g).filter(|&x| comm[x] == c).flat_map(|x| groups[x].clone()).collect();
            members.sort_unstable();
            merged.push(members);
        }
        groups = merged;
    }
    (double_sum_modularity(n, edges, &assignment), assignment)
}

/// Random graph on `n` nodes: each pair joined with probability `p`,
/// weights uniform in `(0.05, 0.95)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<Edge> {
    let mut e = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(p) {
                e.push((i, j, rng.random_range(0.05..0.95)));
            }
        }
    }
    e
}

/// Like [`random_graph`] but a random spanning tree is added first, so the
/// graph is connected.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<Edge> {
    let mut present = vec![vec![false; n]; n];
    let mut e = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        present[u][v] = true;
        e.push((u, v, rng.random_range(0.05..0.95)));
    }
    for (i, j, w) in random_graph(rng, n, p) {
        if !present[i][j] {
            e.push((i, j, w));
        }
    }
    e
}

pub fn clique(nodes: std::ops::Range<usize>, w: f64) -> Vec<Edge> {
    let v: Vec<usize> = nodes.collect();
    let mut e = Vec::new();
    for (x, &a) in v.iter().enumerate() {
        for &b in &v[x + 1..] {
            e.push((a, b, w));
        }
    }
    e
}

/// Two cliques of sizes `a` and `b` with random intra weights in
/// `[0.6, 0.95)` joined by one bridge of weight in `[0.05, 0.5)` between
/// random members. Returns the edges and the planted bipartition.
pub fn two_cliques_with_bridge<R: Rng>(rng: &mut R, a: usize, b: usize) -> (Vec<Edge>, Vec<usize>) {
    let mut e = Vec::new();
    for range in [0..a, a..a + b] {
        for (i, j, _) in clique(range, 0.0) {
            e.push((i, j, rng.random_range(0.6..0.95)));
        }
    }
    let x = rng.random_range(0..a);
    let y = rng.random_range(a..a + b);
    e.push((x, y, rng.random_range(0.05..0.5)));
    let planted = (0..a + b).map(|v| usize::from(v >= a)).collect();
    (e, planted)
}

/// Zachary's karate club, 34 members and 78 friendships, 1-based ids.
pub const KARATE_CLUB: [(usize, usize); 78] = [
    (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8), (1, 9), (1, 11), (1, 12),
    (1, 13), (1, 14), (1, 18), (1, 20), (1, 22), (1, 32), (2, 3), (2, 4), (2, 8), (2, 14),
    (2, 18), (2, 20), (2, 22), (2, 31), (3, 4), (3, 8), (3, 9), (3, 10), (3, 14), (3, 28),
    (3, 29), (3, 33), (4, 8), (4, 13), (4, 14), (5, 7), (5, 11), (6, 7), (6, 11), (6, 17),
    (7, 17), (9, 31), (9, 33), (9, 34), (10, 34), (14, 34), (15, 33), (15, 34), (16, 33), (16, 34),
    (19, 33), (19, 34), (20, 34), (21, 33), (21, 34), (23, 33), (23, 34), (24, 26), (24, 28), (24, 30),
    (24, 33), (24, 34), (25, 26), (25, 28), (25, 32), (26, 32), (27, 30), (27, 34), (28, 34), (29, 32),
    (29, 34), (30, 33), (30, 34), (31, 33), (31, 34), (32, 33), (32, 34), (33, 34),
];
