//! The `simulate` command: integrate a configuration and stream records.

use std::fs::File;
use std::io::{self, BufWriter};
use std::path::Path;

use curvebody::dynamics::integrate;
use curvebody::Error;

use crate::config::SimConfig;
use crate::output::{Format, RecordWriter};

#[derive(Debug, thiserror::Error)]
pub enum SimulateError {
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
    #[error("invalid initial state: {0}")]
    Initial(Error),
}

/// How a run ended.
#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub records: usize,
    pub stop: Option<Error>,
}

impl SimOutcome {
    pub fn status_line(&self) -> Option<String> {
        self.stop.as_ref().map(|e| match e {
            Error::ChartExit { last_valid } => {
                format!("stopped: ChartExit after step {last_valid}; {} records written", self.records)
            }
            Error::PotentialSingularity { .. } => {
                format!("stopped: PotentialSingularity ({e}); {} records written", self.records)
            }
            other => format!("stopped: {other}; {} records written", self.records),
        })
    }
}

pub fn run_simulation(cfg: &SimConfig, out: &Path, format: Format) -> Result<SimOutcome, SimulateError> {
    let file = BufWriter::new(File::create(out)?);
    let mut writer = RecordWriter::new(file, format)?;
    let traj = match integrate(&cfg.state, &cfg.masses, &cfg.potential, &cfg.settings()) {
        Ok(t) => t,
        Err(e @ Error::PotentialSingularity { .. }) => {
            writer.finish()?;
            return Ok(SimOutcome { records: 0, stop: Some(e) });
        }
        Err(e) => return Err(SimulateError::Initial(e)),
    };
    for s in &traj.samples {
        writer.write(s)?;
    }
    writer.finish()?;
    Ok(SimOutcome { records: traj.samples.len(), stop: traj.stop })
}
