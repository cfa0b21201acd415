use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wordgraph_core::{betweenness, BetweennessOptions, DistanceTransform, SimilarityGraph};
use wordgraph_testkit as tk;

fn raw(g: &SimilarityGraph, transform: DistanceTransform) -> Vec<f64> {
    betweenness(g, &BetweennessOptions { transform, ..Default::default() }).scores().to_vec()
}

fn assert_close(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (v, (g, w)) in got.iter().zip(want).enumerate() {
        assert!((g - w).abs() <= tol, "node {v}: {g} vs {w}");
    }
}

#[test]
fn random_graphs_match_path_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for round in 0..60 {
        let n = rng.random_range(3..=12);
        let edges = tk::random_connected_graph(&mut rng, n, 0.3);
        let g = tk::graph(n, &edges);
        let transform = if round % 2 == 0 { DistanceTransform::OneMinus } else { DistanceTransform::Reciprocal };
        let oracle = tk::naive_betweenness(n, &edges, |s| transform.apply(s));
        assert_close(&raw(&g, transform), &oracle, 1e-9);
    }
}

#[test]
fn discrete_weights_produce_counted_ties() {
    // Lengths like 0.2 + 0.6 and 0.4 + 0.4 differ only by rounding.
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let levels = [0.2, 0.4, 0.6, 0.8];
    for _ in 0..40 {
        let n = rng.random_range(4..=10);
        let edges: Vec<tk::Edge> = tk::random_connected_graph(&mut rng, n, 0.35)
            .into_iter()
            .map(|(a, b, _)| (a, b, levels[rng.random_range(0..4)]))
            .collect();
        let g = tk::graph(n, &edges);
        let oracle = tk::naive_betweenness(n, &edges, |s| 1.0 - s);
        assert_close(&raw(&g, DistanceTransform::OneMinus), &oracle, 1e-9);
    }
}

#[test]
fn closed_forms_on_uniform_weights() {
    for n in 3..=9 {
        // path: node i carries i * (n - 1 - i) pairs
        let path: Vec<tk::Edge> = (0..n - 1).map(|i| (i, i + 1, 0.5)).collect();
        let want: Vec<f64> = (0..n).map(|i| (i * (n - 1 - i)) as f64).collect();
        assert_eq!(raw(&tk::graph(n, &path), DistanceTransform::OneMinus), want);

        // star: center carries C(n-1, 2)
        let star: Vec<tk::Edge> = (1..n).map(|i| (0, i, 0.5)).collect();
        let mut want = vec![0.0; n];
        want[0] = ((n - 1) * (n - 2) / 2) as f64;
        assert_eq!(raw(&tk::graph(n, &star), DistanceTransform::OneMinus), want);

        // complete graph: every pair adjacent
        let complete = tk::clique(0..n, 0.5);
        assert_eq!(raw(&tk::graph(n, &complete), DistanceTransform::OneMinus), vec![0.0; n]);

        // cycle: every node scores (n-1)(n-3)/8 for odd n, (n-2)^2/8 for even n
        let mut cycle: Vec<tk::Edge> = (0..n - 1).map(|i| (i, i + 1, 0.5)).collect();
        cycle.push((0, n - 1, 0.5));
        let each = if n % 2 == 1 {
            ((n - 1) * (n - 3)) as f64 / 8.0
        } else {
            ((n - 2) * (n - 2)) as f64 / 8.0
        };
        assert_close(&raw(&tk::graph(n, &cycle), DistanceTransform::OneMinus), &vec![each; n], 1e-12);
    }
}

#[test]
fn normalized_scores_are_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..20 {
        let n = rng.random_range(3..=12);
        let g = tk::graph(n, &tk::random_connected_graph(&mut rng, n, 0.2));
        let t = betweenness(&g, &BetweennessOptions { normalize: true, ..Default::default() });
        assert!(t.is_normalized());
        assert!(t.scores().iter().all(|&x| (0.0..=1.0 + 1e-12).contains(&x)));
    }
}

/// Shortest-path predecessor sets under a transform, from Floyd-Warshall.
fn shortest_path_sets(n: usize, edges: &[tk::Edge], f: impl Fn(f64) -> f64) -> Vec<Vec<bool>> {
    let lengths: Vec<tk::Edge> = edges.iter().map(|&(a, b, w)| (a, b, f(w))).collect();
    let d = tk::floyd_warshall(n, &lengths);
    // on[(s * n + t)][v]: v lies on some shortest s-t path
    let mut on = vec![vec![false; n]; n * n];
    for s in 0..n {
        for t in 0..n {
            for v in 0..n {
                on[s * n + t][v] = d[s][t].is_finite() && (d[s][v] + d[v][t] - d[s][t]).abs() < 1e-10;
            }
        }
    }
    on
}

#[test]
fn top_node_is_stable_across_transforms_when_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    for _ in 0..200 {
        let n = rng.random_range(4..=10);
        let edges = tk::random_connected_graph(&mut rng, n, 0.3);
        let a = shortest_path_sets(n, &edges, |s| 1.0 - s);
        let b = shortest_path_sets(n, &edges, |s| 1.0 / s);
        if a != b {
            continue;
        }
        checked += 1;
        let g = tk::graph(n, &edges);
        let argmax = |s: Vec<f64>| {
            (0..n).fold(0, |best, v| if s[v] > s[best] + 1e-12 { v } else { best })
        };
        assert_eq!(
            argmax(raw(&g, DistanceTransform::OneMinus)),
            argmax(raw(&g, DistanceTransform::Reciprocal))
        );
    }
    assert!(checked > 20, "only {checked} graphs had identical shortest paths");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn leaves_score_zero_and_relabeling_is_equivariant(seed in any::<u64>(), n in 3usize..=11) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = tk::random_graph(&mut rng, n, 0.35);
        let g = tk::graph(n, &edges);
        let s = raw(&g, DistanceTransform::OneMinus);
        for v in 0..n {
            if g.degree(v) <= 1 {
                prop_assert_eq!(s[v], 0.0);
            }
            prop_assert!(s[v] >= 0.0);
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.reverse();
        perm.rotate_left(seed as usize % n);
        let permuted: Vec<tk::Edge> = edges.iter().map(|&(a, b, w)| (perm[a], perm[b], w)).collect();
        let sp = raw(&tk::graph(n, &permuted), DistanceTransform::OneMinus);
        for v in 0..n {
            prop_assert!((s[v] - sp[perm[v]]).abs() < 1e-9);
        }
    }
}
