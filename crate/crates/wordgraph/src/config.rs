//! Run configuration: a TOML file, overridden field by field by flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use wordgraph_core::seeds::SamplingPolicy;
use wordgraph_core::{DistanceTransform, LouvainOptions, SeedOptions};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[clap(rename_all = "snake_case")]
pub enum TransformName {
    #[default]
    OneMinusS,
    Reciprocal,
}

impl From<TransformName> for DistanceTransform {
    fn from(t: TransformName) -> Self {
        match t {
            TransformName::OneMinusS => DistanceTransform::OneMinus,
            TransformName::Reciprocal => DistanceTransform::Reciprocal,
        }
    }
}

impl From<DistanceTransform> for TransformName {
    fn from(t: DistanceTransform) -> Self {
        match t {
            DistanceTransform::OneMinus => TransformName::OneMinusS,
            DistanceTransform::Reciprocal => TransformName::Reciprocal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub vectors_path: Option<PathBuf>,
    pub k: usize,
    pub floor: f64,
    pub min_gain: f64,
    pub rng_seed: Option<u64>,
    pub transform: TransformName,
    pub normalize: bool,
    pub top_r: usize,
    pub output_dir: PathBuf,
    /// Estimate betweenness from sampled sources in communities larger than
    /// `sampling_cutoff`.
    pub sampling: bool,
    pub sampling_cutoff: usize,
    pub sampling_sources: usize,
    /// Also write every community's full member list.
    pub full_membership: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            vectors_path: None,
            k: wordgraph_core::DEFAULT_K,
            floor: wordgraph_core::DEFAULT_FLOOR,
            min_gain: wordgraph_core::DEFAULT_MIN_GAIN,
            rng_seed: None,
            transform: TransformName::default(),
            normalize: false,
            top_r: wordgraph_core::DEFAULT_TOP_R,
            output_dir: PathBuf::from("wordgraph-out"),
            sampling: false,
            sampling_cutoff: SamplingPolicy::DEFAULT_CUTOFF,
            sampling_sources: 1024,
            full_membership: false,
        }
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let config: Self = toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: &str| Err(CliError::Config(msg.to_string()));
        if self.k == 0 {
            return bad("k must be a positive integer");
        }
        if !(self.floor > 0.0 && self.floor < 1.0) {
            return bad("floor must lie in (0, 1)");
        }
        if !(self.min_gain.is_finite() && self.min_gain >= 0.0) {
            return bad("min_gain must be finite and non-negative");
        }
        if self.top_r == 0 {
            return bad("top_r must be a positive integer");
        }
        if self.sampling && (self.sampling_cutoff == 0 || self.sampling_sources == 0) {
            return bad("sampling_cutoff and sampling_sources must be positive");
        }
        Ok(())
    }

    pub fn louvain_options(&self) -> LouvainOptions {
        LouvainOptions { min_gain: self.min_gain, rng_seed: self.rng_seed }
    }

    pub fn seed_options(&self) -> SeedOptions {
        SeedOptions {
            top_r: self.top_r,
            transform: self.transform.into(),
            normalize: self.normalize,
            sampling: self.sampling.then(|| SamplingPolicy {
                cutoff: self.sampling_cutoff,
                sources: self.sampling_sources,
                seed: self.rng_seed.unwrap_or(0),
            }),
        }
    }

    /// Applies every flag that was given.
    pub fn apply(&mut self, o: &ConfigOverrides) -> Result<(), CliError> {
        macro_rules! set {
            ($($field:ident),*) => {$(
                if let Some(v) = &o.$field {
                    self.$field = v.clone().into();
                }
            )*};
        }
        set!(k, floor, min_gain, transform, normalize, top_r, output_dir, sampling, sampling_cutoff, sampling_sources, full_membership);
        if let Some(v) = &o.vectors {
            self.vectors_path = Some(v.clone());
        }
        if let Some(s) = o.rng_seed {
            self.rng_seed = Some(s);
        }
        self.validate()
    }
}

/// Command-line flags mirroring [`PipelineConfig`]; each one given wins over
/// the configuration file.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct ConfigOverrides {
    /// TOML configuration file
    #[arg(long, short = 'c')]
    pub config: Option<PathBuf>,
    /// word2vec text file
    #[arg(long)]
    pub vectors: Option<PathBuf>,
    /// Neighbors kept per word
    #[arg(long)]
    pub k: Option<usize>,
    /// Minimum similarity for an edge, in (0, 1)
    #[arg(long)]
    pub floor: Option<f64>,
    /// Minimum modularity gain for a Louvain move
    #[arg(long)]
    pub min_gain: Option<f64>,
    /// Shuffle the Louvain visit order with this seed; also seeds sampling
    #[arg(long)]
    pub rng_seed: Option<u64>,
    #[arg(long, value_enum)]
    pub transform: Option<TransformName>,
    /// Report normalized betweenness as the seed score
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub normalize: Option<bool>,
    /// Seed words per community
    #[arg(long)]
    pub top_r: Option<usize>,
    #[arg(long, short = 'o')]
    pub output_dir: Option<PathBuf>,
    /// Sample betweenness sources in communities above the cutoff
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub sampling: Option<bool>,
    #[arg(long)]
    pub sampling_cutoff: Option<usize>,
    #[arg(long)]
    pub sampling_sources: Option<usize>,
    /// Write community_members.tsv with every member of every community
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub full_membership: Option<bool>,
}

impl ConfigOverrides {
    /// The configuration file (or defaults) with these flags applied.
    pub fn resolve(&self) -> Result<PipelineConfig, CliError> {
        let mut config = match &self.config {
            Some(path) => PipelineConfig::load(path)?,
            None => PipelineConfig::default(),
        };
        config.apply(self)?;
        Ok(config)
    }
}
