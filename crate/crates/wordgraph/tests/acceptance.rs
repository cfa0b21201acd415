//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.
//!
//! Every tolerance and budget is a constant below.

use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wordgraph::pipeline;
use wordgraph::report::SeedReportDoc;
use wordgraph::PipelineConfig;
use wordgraph_core::{
    adjusted_rand_index, betweenness, louvain, modularity, BetweennessOptions, DistanceTransform,
    LouvainOptions, Partition, SyntheticSpec,
};
use wordgraph_testkit as tk;

const MODULARITY_TOL: f64 = 1e-12;
const OPTIMUM_TOL: f64 = 1e-12;
const BETWEENNESS_TOL: f64 = 1e-9;
const LOUVAIN_BUDGET: Duration = Duration::from_secs(60);
const PLANTED_MIN_ARI: f64 = 0.95;
const PLANTED_BUDGET: Duration = Duration::from_secs(120);
const SCALE_BUDGET: Duration = Duration::from_secs(600);
const SCALE_MEMORY_BYTES: u64 = 8 << 30;
const EXACT_SEED_LIMIT: usize = 20_000;
const KARATE_MIN_Q: f64 = 0.40;

const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_SIZE: usize = 200;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// The shared random corpus of criteria 1 and 2: 4–8 nodes, weights in
/// (0, 1), at least one edge.
fn small_corpus() -> Vec<(usize, Vec<tk::Edge>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let n = rng.random_range(4..=8);
            let p = rng.random_range(0.2..0.9);
            let mut e = tk::random_graph(&mut rng, n, p);
            if e.is_empty() {
                e.push((0, n - 1, rng.random_range(0.05..0.95)));
            }
            (n, e)
        })
        .collect()
}

fn modularity_correctness() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_all_in_one = 0.0f64;
    let mut partitions = 0;
    for (n, edges) in small_corpus() {
        let g = tk::graph(n, &edges);
        for p in tk::set_partitions(n) {
            let q = modularity(&g, &Partition::new(&g, p.clone()).unwrap()).unwrap().value();
            worst = worst.max((q - tk::double_sum_modularity(n, &edges, &p)).abs());
            partitions += 1;
        }
        let all = modularity(&g, &Partition::all_in_one(&g)).unwrap().value();
        worst_all_in_one = worst_all_in_one.max(all.abs());
    }
    outcome(
        worst <= MODULARITY_TOL && worst_all_in_one <= MODULARITY_TOL,
        format!(
            "{CORPUS_SIZE} graphs, {partitions} partitions, max |Q - double sum| = {worst:.1e}, \
             max |Q(all-in-one)| = {worst_all_in_one:.1e} (tol {MODULARITY_TOL:.0e})"
        ),
    )
}

fn louvain_validity() -> Outcome {
    let clock = Instant::now();
    let mut worst_excess = f64::NEG_INFINITY;
    for (n, edges) in small_corpus() {
        let q = louvain(&tk::graph(n, &edges), &LouvainOptions::default()).unwrap().modularity.value();
        let (best, _) = tk::exhaustive_optimum(n, &edges);
        worst_excess = worst_excess.max(q - best);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 1);
    let mut fixtures_ok = 0;
    let mut worst_gap = 0.0f64;
    for _ in 0..20 {
        let (a, b) = (rng.random_range(3..=5), rng.random_range(3..=5));
        let (edges, planted) = tk::two_cliques_with_bridge(&mut rng, a, b);
        let n = a + b;
        let out = louvain(&tk::graph(n, &edges), &LouvainOptions::default()).unwrap();
        let (best, _) = tk::exhaustive_optimum(n, &edges);
        let gap = (out.modularity.value() - best).abs();
        worst_gap = worst_gap.max(gap);
        let recovered = adjusted_rand_index(out.partition.assignment(), &planted).unwrap() == 1.0
            && out.partition.community_count() == 2;
        if gap <= OPTIMUM_TOL && recovered {
            fixtures_ok += 1;
        }
    }
    let elapsed = clock.elapsed();
    outcome(
        worst_excess <= OPTIMUM_TOL && fixtures_ok == 20 && elapsed < LOUVAIN_BUDGET,
        format!(
            "max Q - optimum = {worst_excess:.1e} (tol {OPTIMUM_TOL:.0e}); two-clique fixtures at optimum \
             with planted split: {fixtures_ok}/20 (max gap {worst_gap:.1e}); {:.1?} (budget {LOUVAIN_BUDGET:?})",
            elapsed
        ),
    )
}

fn betweenness_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 2);
    let mut worst = 0.0f64;
    for round in 0..CORPUS_SIZE {
        let n = rng.random_range(3..=12);
        let p = rng.random_range(0.15..0.6);
        let edges = if round % 2 == 0 {
            tk::random_connected_graph(&mut rng, n, p)
        } else {
            tk::random_graph(&mut rng, n, p)
        };
        let transform = if round % 4 < 2 { DistanceTransform::OneMinus } else { DistanceTransform::Reciprocal };
        let got = betweenness(&tk::graph(n, &edges), &BetweennessOptions { transform, ..Default::default() });
        let want = tk::naive_betweenness(n, &edges, |s| transform.apply(s));
        for (v, w) in want.iter().enumerate() {
            worst = worst.max((got.score(v) - w).abs());
        }
    }
    let mut closed_forms = true;
    for n in 3..=12 {
        let raw = |edges: &[tk::Edge]| {
            betweenness(&tk::graph(n, edges), &BetweennessOptions::default()).scores().to_vec()
        };
        let path: Vec<tk::Edge> = (0..n - 1).map(|i| (i, i + 1, 0.5)).collect();
        let path_want: Vec<f64> = (0..n).map(|i| (i * (n - 1 - i)) as f64).collect();
        let star: Vec<tk::Edge> = (1..n).map(|i| (0, i, 0.5)).collect();
        let mut star_want = vec![0.0; n];
        star_want[0] = ((n - 1) * (n - 2) / 2) as f64;
        closed_forms &= raw(&path) == path_want && raw(&star) == star_want;
    }
    outcome(
        worst <= BETWEENNESS_TOL && closed_forms,
        format!(
            "{CORPUS_SIZE} graphs of 3-12 nodes, max |error| = {worst:.1e} (tol {BETWEENNESS_TOL:.0e}); \
             star and path closed forms exact for n = 3..12: {closed_forms}"
        ),
    )
}

/// Planted labels aligned with the partition file's word order.
fn planted_vs_found(dir: &Path, labels_path: &Path) -> (Vec<usize>, Vec<usize>, BTreeMap<String, usize>) {
    let planted = pipeline::read_labels(labels_path).unwrap();
    let found: BTreeMap<String, usize> = fs::read_to_string(dir.join(pipeline::PARTITION))
        .unwrap()
        .lines()
        .map(|l| {
            let (w, c) = l.split_once('\t').unwrap();
            (w.to_string(), c.parse().unwrap())
        })
        .collect();
    // Words missing from the partition (isolated in the graph) count as
    // singleton communities.
    let mut next = found.values().max().map_or(0, |m| m + 1);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (word, &cluster) in &planted {
        a.push(cluster);
        b.push(found.get(word).copied().unwrap_or_else(|| {
            next += 1;
            next - 1
        }));
    }
    (a, b, planted)
}

fn planted_recovery() -> Outcome {
    let clock = Instant::now();
    let tmp = tempfile::tempdir().unwrap();
    let spec = SyntheticSpec { clusters: 8, words_per_cluster: 200, dim: 32, noise: 0.05, seed: 11 };
    let vectors = tmp.path().join("vectors.txt");
    let labels = tmp.path().join("labels.tsv");
    pipeline::cmd_gen_synthetic(&spec, &vectors, Some(&labels)).unwrap();
    let out = tmp.path().join("out");
    let config = PipelineConfig { vectors_path: Some(vectors), output_dir: out.clone(), ..Default::default() };
    pipeline::cmd_pipeline(&config).unwrap();
    let elapsed = clock.elapsed();

    let (planted, found, by_word) = planted_vs_found(&out, &labels);
    let ari = adjusted_rand_index(&planted, &found).unwrap();

    let seeds: SeedReportDoc = serde_json::from_slice(&fs::read(out.join(pipeline::SEEDS)).unwrap()).unwrap();
    let members: BTreeMap<usize, Vec<usize>> = fs::read_to_string(out.join(pipeline::PARTITION))
        .unwrap()
        .lines()
        .fold(BTreeMap::new(), |mut m, l| {
            let (w, c) = l.split_once('\t').unwrap();
            m.entry(c.parse().unwrap()).or_default().push(by_word[w]);
            m
        });
    let mut seeds_ok = 0;
    for c in &seeds.communities {
        let mut votes = BTreeMap::new();
        for &cluster in &members[&c.id] {
            *votes.entry(cluster).or_insert(0usize) += 1;
        }
        let majority = votes.iter().max_by_key(|(cluster, n)| (**n, std::cmp::Reverse(**cluster))).unwrap().0;
        if by_word[&c.seeds[0].word] == *majority {
            seeds_ok += 1;
        }
    }
    let communities = seeds.communities.len();
    outcome(
        ari >= PLANTED_MIN_ARI && seeds_ok == communities && elapsed < PLANTED_BUDGET,
        format!(
            "8x200 words, dim 32, noise 0.05: ARI = {ari:.4} (min {PLANTED_MIN_ARI}), {communities} communities, \
             top seed in majority cluster {seeds_ok}/{communities}; {:.1?} (budget {PLANTED_BUDGET:?})",
            elapsed
        ),
    )
}

/// Peak resident set size of this process, from the kernel's high-water mark.
fn peak_rss_bytes() -> Option<u64> {
    let status = fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

fn scale_target() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let spec = SyntheticSpec { clusters: 50, words_per_cluster: 1000, dim: 64, noise: 0.05, seed: 5 };
    let vectors = tmp.path().join("vectors.txt");
    pipeline::cmd_gen_synthetic(&spec, &vectors, None).unwrap();
    let out = tmp.path().join("out");
    let config = PipelineConfig { vectors_path: Some(vectors), output_dir: out.clone(), k: 10, ..Default::default() };

    let clock = Instant::now();
    let stats = pipeline::cmd_build_graph(&config).unwrap();
    let summary = pipeline::cmd_communities(&config, &out.join(pipeline::EDGES)).unwrap();
    let build_and_communities = clock.elapsed();

    let largest = summary.community_sizes.iter().copied().max().unwrap_or(0);
    let clock = Instant::now();
    let seeds_done = largest <= EXACT_SEED_LIMIT
        && pipeline::cmd_seeds(&config, &out.join(pipeline::EDGES), &out.join(pipeline::PARTITION))
            .map(|doc| doc.communities.iter().all(|c| !c.sampled))
            .unwrap_or(false);
    let seeds_time = clock.elapsed();
    let peak = peak_rss_bytes();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    outcome(
        build_and_communities < SCALE_BUDGET && peak.is_some_and(|p| p < SCALE_MEMORY_BYTES) && seeds_done,
        format!(
            "{} words, dim 64, k = 10: {} edges, {} communities (largest {largest}); build-graph + communities \
             {:.1?} (budget {SCALE_BUDGET:?}) on {threads} hardware thread(s); peak RSS {} MiB (limit {} MiB); \
             exact seeds {} in {:.1?}",
            stats.nodes,
            stats.edges,
            summary.community_count,
            build_and_communities,
            peak.map_or("unknown".to_string(), |p| (p >> 20).to_string()),
            SCALE_MEMORY_BYTES >> 20,
            if seeds_done { "completed" } else { "NOT completed" },
            seeds_time
        ),
    )
}

fn karate_club() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/karate_club.tsv");
    let g = pipeline::read_edges(&path).unwrap();
    let q = louvain(&g, &LouvainOptions::default()).unwrap().modularity.value();
    let (reference, _) = tk::naive_louvain(g.node_count(), &tk::edge_list(&g));
    outcome(
        q >= KARATE_MIN_Q && reference >= KARATE_MIN_Q,
        format!(
            "34 nodes, 78 edges: Q = {q:.6}; naive reference Louvain Q = {reference:.6} (min {KARATE_MIN_Q})"
        ),
    )
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let spec = SyntheticSpec { clusters: 5, words_per_cluster: 80, dim: 16, noise: 0.2, seed: 3 };
    let vectors = tmp.path().join("vectors.txt");
    pipeline::cmd_gen_synthetic(&spec, &vectors, None).unwrap();
    let run = |name: &str| {
        let config = PipelineConfig {
            vectors_path: Some(vectors.clone()),
            output_dir: tmp.path().join(name),
            rng_seed: Some(17),
            full_membership: true,
            ..Default::default()
        };
        pipeline::cmd_pipeline(&config).unwrap()
    };
    let (a, b) = (run("first"), run("second"));
    let mut identical = 0;
    for name in a.outputs.keys() {
        let bytes = |run: &str| fs::read(tmp.path().join(run).join(name)).unwrap();
        if bytes("first") == bytes("second") {
            identical += 1;
        }
    }
    let digests_equal = a.outputs == b.outputs && a.input_sha256 == b.input_sha256;
    outcome(
        digests_equal && identical == a.outputs.len(),
        format!(
            "two seeded pipeline runs: {identical}/{} artifacts byte-identical, manifest digests equal: {digests_equal}",
            a.outputs.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("modularity correctness", modularity_correctness),
        ("louvain validity", louvain_validity),
        ("betweenness oracle equivalence", betweenness_oracle),
        ("end-to-end planted recovery", planted_recovery),
        ("scale target", scale_target),
        ("karate club", karate_club),
        ("determinism", determinism),
    ];
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if filter.as_deref().is_some_and(|f| !name.contains(f)) {
            continue;
        }
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| outcome(false, "panicked".to_string()));
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!("[{status}] {} {name}: {}", i + 1, result.detail);
        failed += usize::from(!result.pass);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
