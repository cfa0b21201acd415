//! Pipeline stages. Each reads its inputs from files, computes, then writes
//! all of its artifacts into the output directory.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::info;
use sha2::{Digest, Sha256};
use wordgraph_core::{extract_seeds, louvain, EmbeddingStore, Partition, SimilarityGraph, SyntheticSpec};

use crate::config::PipelineConfig;
use crate::error::CliError;
use crate::formats::{dot, edges, graphml, partition, word2vec};
use crate::report::{self, CommunitySummary, GraphStats, RunManifest, SeedReportDoc};

pub const EDGES: &str = "edges.tsv";
pub const GRAPHML: &str = "graph.graphml";
pub const DOT: &str = "graph.dot";
pub const GRAPH_STATS: &str = "graph_stats.json";
pub const PARTITION: &str = "partition.tsv";
pub const COMMUNITIES: &str = "communities.json";
pub const SEEDS: &str = "seeds.json";
pub const MEMBERS: &str = "community_members.tsv";
pub const MANIFEST: &str = "manifest.json";

/// A named file's full contents, produced before anything touches disk.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub name: &'static str,
    pub bytes: Vec<u8>,
}

impl Artifact {
    fn render(name: &'static str, f: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Result<Self, CliError> {
        let mut bytes = Vec::new();
        f(&mut bytes).map_err(|e| CliError::io(name, e))?;
        Ok(Self { name, bytes })
    }

    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(&self.bytes))
    }
}

/// Writes every artifact to a temporary file in `dir` first and only then
/// renames them into place.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut staged = Vec::with_capacity(artifacts.len());
    for a in artifacts {
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
        tmp.write_all(&a.bytes).map_err(|e| CliError::io(tmp.path(), e))?;
        staged.push((tmp, dir.join(a.name)));
    }
    for (tmp, path) in staged {
        tmp.persist(&path).map_err(|e| CliError::io(&path, e.error))?;
    }
    Ok(())
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

pub fn read_vectors(path: &Path) -> Result<EmbeddingStore, CliError> {
    parse_vectors_bytes(path, &read_bytes(path)?)
}

fn parse_vectors_bytes(path: &Path, bytes: &[u8]) -> Result<EmbeddingStore, CliError> {
    word2vec::parse_vectors(bytes).map_err(|e| CliError::read(path, e))
}

pub fn read_edges(path: &Path) -> Result<SimilarityGraph, CliError> {
    let file = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    edges::load_edges(BufReader::new(file)).map_err(|e| CliError::read(path, e))
}

pub fn read_partition(g: &SimilarityGraph, path: &Path) -> Result<Partition, CliError> {
    let file = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    partition::read_partition(g, BufReader::new(file)).map_err(|e| CliError::read(path, e))
}

fn vectors_path(config: &PipelineConfig) -> Result<&Path, CliError> {
    config
        .vectors_path
        .as_deref()
        .ok_or_else(|| CliError::Config("no vectors file given (vectors_path or --vectors)".into()))
}

/// Graph artifacts for an already-loaded store.
pub fn graph_artifacts(store: &EmbeddingStore, config: &PipelineConfig) -> Result<(GraphStats, Vec<Artifact>), CliError> {
    info!("building graph over {} words (k = {}, floor = {})", store.len(), config.k, config.floor);
    let g = wordgraph_core::build_graph(store, config.k, config.floor)?;
    let stats = GraphStats::of(&g, config.k, config.floor);
    info!("graph has {} edges, {} isolated words", stats.edges, stats.isolated);
    let artifacts = vec![
        Artifact::render(EDGES, |w| edges::save_edges(&g, w))?,
        Artifact::render(GRAPHML, |w| graphml::write_graphml(&g, w))?,
        Artifact::render(DOT, |w| dot::write_dot(&g, w))?,
        Artifact { name: GRAPH_STATS, bytes: report::to_json(&stats) },
    ];
    Ok((stats, artifacts))
}

pub fn community_artifacts(g: &SimilarityGraph, config: &PipelineConfig) -> Result<(CommunitySummary, Vec<Artifact>), CliError> {
    info!("detecting communities on {} nodes, {} edges", g.node_count(), g.edge_count());
    let outcome = louvain(g, &config.louvain_options())?;
    let summary = CommunitySummary::of(&outcome, config.min_gain, config.rng_seed);
    info!(
        "{} communities over {} levels, modularity {:.6}",
        summary.community_count,
        summary.levels.len(),
        summary.modularity
    );
    let artifacts = vec![
        Artifact::render(PARTITION, |w| partition::write_partition(g, &outcome.partition, w))?,
        Artifact { name: COMMUNITIES, bytes: report::to_json(&summary) },
    ];
    Ok((summary, artifacts))
}

pub fn seed_artifacts(
    g: &SimilarityGraph,
    p: &Partition,
    config: &PipelineConfig,
) -> Result<(SeedReportDoc, Vec<Artifact>), CliError> {
    info!("ranking seed words in {} communities", p.community_count());
    let seeds = extract_seeds(g, p, &config.seed_options())?;
    let doc = SeedReportDoc::from(&seeds);
    let mut artifacts = vec![Artifact { name: SEEDS, bytes: report::to_json(&doc) }];
    if config.full_membership {
        artifacts.push(Artifact::render(MEMBERS, |w| partition::write_members(g, p, w))?);
    }
    Ok((doc, artifacts))
}

/// `build-graph`: vectors file to edge list, GraphML, DOT and stats.
pub fn cmd_build_graph(config: &PipelineConfig) -> Result<GraphStats, CliError> {
    let store = read_vectors(vectors_path(config)?)?;
    let (stats, artifacts) = graph_artifacts(&store, config)?;
    write_artifacts(&config.output_dir, &artifacts)?;
    Ok(stats)
}

/// `communities`: edge list to partition TSV and summary.
pub fn cmd_communities(config: &PipelineConfig, edges_path: &Path) -> Result<CommunitySummary, CliError> {
    let g = read_edges(edges_path)?;
    let (summary, artifacts) = community_artifacts(&g, config)?;
    write_artifacts(&config.output_dir, &artifacts)?;
    Ok(summary)
}

/// `seeds`: edge list and partition to the seed report.
pub fn cmd_seeds(config: &PipelineConfig, edges_path: &Path, partition_path: &Path) -> Result<SeedReportDoc, CliError> {
    let g = read_edges(edges_path)?;
    let p = read_partition(&g, partition_path)?;
    let (doc, artifacts) = seed_artifacts(&g, &p, config)?;
    write_artifacts(&config.output_dir, &artifacts)?;
    Ok(doc)
}

/// `pipeline`: every stage in order, each reading the previous stage's
/// files, followed by the run manifest.
pub fn cmd_pipeline(config: &PipelineConfig) -> Result<RunManifest, CliError> {
    let input = vectors_path(config)?;
    let dir = config.output_dir.as_path();
    let mut timings = BTreeMap::new();
    let mut outputs = BTreeMap::new();
    let mut record = |artifacts: &[Artifact]| {
        for a in artifacts {
            outputs.insert(a.name.to_string(), a.sha256());
        }
    };

    let clock = Instant::now();
    let bytes = read_bytes(input)?;
    let input_sha256 = hex::encode(Sha256::digest(&bytes));
    let store = parse_vectors_bytes(input, &bytes)?;
    drop(bytes);
    let (_, artifacts) = graph_artifacts(&store, config)?;
    drop(store);
    write_artifacts(dir, &artifacts)?;
    record(&artifacts);
    timings.insert("build_graph".to_string(), elapsed_ms(clock));

    let clock = Instant::now();
    let g = read_edges(&dir.join(EDGES))?;
    let (_, artifacts) = community_artifacts(&g, config)?;
    write_artifacts(dir, &artifacts)?;
    record(&artifacts);
    timings.insert("communities".to_string(), elapsed_ms(clock));

    let clock = Instant::now();
    let p = read_partition(&g, &dir.join(PARTITION))?;
    let (_, artifacts) = seed_artifacts(&g, &p, config)?;
    write_artifacts(dir, &artifacts)?;
    record(&artifacts);
    timings.insert("seeds".to_string(), elapsed_ms(clock));

    let manifest = RunManifest {
        schema_version: report::SCHEMA_VERSION,
        config: config.clone(),
        versions: BTreeMap::from([
            ("wordgraph".to_string(), env!("CARGO_PKG_VERSION").to_string()),
            ("wordgraph-core".to_string(), wordgraph_core::VERSION.to_string()),
        ]),
        input_sha256,
        outputs,
        timings_ms: timings,
    };
    write_artifacts(dir, &[Artifact { name: MANIFEST, bytes: report::to_json(&manifest) }])?;
    info!("wrote {} artifacts to {}", manifest.outputs.len() + 1, dir.display());
    Ok(manifest)
}

fn elapsed_ms(since: Instant) -> u64 {
    since.elapsed().as_millis() as u64
}

/// `gen-synthetic`: planted-cluster vectors, plus `word<TAB>cluster` labels
/// when `labels_path` is given.
pub fn cmd_gen_synthetic(spec: &SyntheticSpec, vectors_path: &Path, labels_path: Option<&Path>) -> Result<(), CliError> {
    let (store, labels) = wordgraph_core::generate_synthetic(spec)?;
    let mut vectors = Vec::new();
    word2vec::write_vectors(&store, &mut vectors).map_err(|e| CliError::io(vectors_path, e))?;
    write_file(vectors_path, &vectors)?;
    if let Some(path) = labels_path {
        let mut text = String::new();
        for (word, c) in store.words().iter().zip(&labels) {
            text.push_str(&format!("{word}\t{c}\n"));
        }
        write_file(path, text.as_bytes())?;
    }
    info!("wrote {} words in {} clusters", store.len(), spec.clusters);
    Ok(())
}

/// Atomic single-file write into the file's parent directory.
fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&parent).map_err(|e| CliError::io(&parent, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&parent).map_err(|e| CliError::io(&parent, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Reads `word<TAB>cluster` labels as written by [`cmd_gen_synthetic`].
pub fn read_labels(path: &Path) -> Result<BTreeMap<String, usize>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let parsed = line.split_once('\t').and_then(|(w, c)| Some((w.to_string(), c.parse().ok()?)));
        let Some((w, c)) = parsed else {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                source: crate::ParseError {
                    line: i + 1,
                    kind: crate::ParseErrorKind::Malformed("expected word<TAB>cluster"),
                },
            });
        };
        out.insert(w, c);
    }
    Ok(out)
}
