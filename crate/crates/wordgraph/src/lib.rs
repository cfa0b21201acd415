//! File formats, configuration and pipeline stages for `wordgraph-core`.
//!
//! Each stage reads its inputs from files, computes fully in memory and only
//! then writes its outputs, each through a temporary file that is renamed
//! into place. A failed stage leaves no partial artifacts behind.

pub mod config;
mod error;
pub mod formats;
pub mod pipeline;
pub mod report;

pub use config::{ConfigOverrides, PipelineConfig, TransformName};
pub use error::{CliError, ParseError, ParseErrorKind, ReadError};
