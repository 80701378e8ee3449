//! Configuration, output formats and the verification suite behind the
//! `curvebody` command-line tool.

pub mod config;
pub mod output;
pub mod simulate;
pub mod verify;

pub use config::{parse_config, ConfigError, SimConfig};
pub use output::{Format, RecordWriter};
pub use verify::{run_suite, VerifyReport};
