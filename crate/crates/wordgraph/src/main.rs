use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wordgraph::pipeline::{self, EDGES, PARTITION};
use wordgraph::{CliError, ConfigOverrides};
use wordgraph_core::SyntheticSpec;

/// Word similarity graphs, communities and seed words from word vectors.
///
/// Exit codes: 0 success, 2 configuration or usage error, 3 malformed input
/// file, 4 I/O error, 5 domain error (for example a graph without edges).
#[derive(Parser)]
#[command(name = "wordgraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the pruned similarity graph from a word2vec text file
    BuildGraph {
        #[command(flatten)]
        config: ConfigOverrides,
    },
    /// Partition an edge list into communities
    Communities {
        /// Edge list [default: <output-dir>/edges.tsv]
        #[arg(long)]
        edges: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigOverrides,
    },
    /// Rank the most central words of each community
    Seeds {
        /// Edge list [default: <output-dir>/edges.tsv]
        #[arg(long)]
        edges: Option<PathBuf>,
        /// Partition TSV [default: <output-dir>/partition.tsv]
        #[arg(long)]
        partition: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigOverrides,
    },
    /// Run every stage and write a manifest
    Pipeline {
        #[command(flatten)]
        config: ConfigOverrides,
    },
    /// Write planted-cluster word vectors for testing
    GenSynthetic {
        #[arg(long, default_value_t = 8)]
        clusters: usize,
        #[arg(long, default_value_t = 200)]
        words_per_cluster: usize,
        #[arg(long, default_value_t = 32)]
        dim: usize,
        #[arg(long, default_value_t = 0.05)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// word2vec text file to write
        #[arg(long, short = 'o')]
        output: PathBuf,
        /// Also write word<TAB>cluster labels here
        #[arg(long)]
        labels: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::BuildGraph { config } => {
            let stats = pipeline::cmd_build_graph(&config.resolve()?)?;
            println!("{} nodes, {} edges", stats.nodes, stats.edges);
        }
        Command::Communities { edges, config } => {
            let config = config.resolve()?;
            let edges = edges.unwrap_or_else(|| config.output_dir.join(EDGES));
            let summary = pipeline::cmd_communities(&config, &edges)?;
            println!("{} communities, modularity {:.6}", summary.community_count, summary.modularity);
        }
        Command::Seeds { edges, partition, config } => {
            let config = config.resolve()?;
            let edges = edges.unwrap_or_else(|| config.output_dir.join(EDGES));
            let partition = partition.unwrap_or_else(|| config.output_dir.join(PARTITION));
            let doc = pipeline::cmd_seeds(&config, &edges, &partition)?;
            for c in &doc.communities {
                if let Some(top) = c.seeds.first() {
                    println!("{}\t{}\t{}", c.id, top.word, top.score);
                }
            }
        }
        Command::Pipeline { config } => {
            let manifest = pipeline::cmd_pipeline(&config.resolve()?)?;
            for (name, digest) in &manifest.outputs {
                println!("{digest}  {name}");
            }
        }
        Command::GenSynthetic { clusters, words_per_cluster, dim, noise, seed, output, labels } => {
            let spec = SyntheticSpec { clusters, words_per_cluster, dim, noise, seed };
            pipeline::cmd_gen_synthetic(&spec, &output, labels.as_deref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(CliError::EXIT_CONFIG as u8) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
