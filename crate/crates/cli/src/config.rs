use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Schur, refined, support and walk bounds at one (r, p).
    Bounds,
    /// Iterate walk bounds until upper and lower meet.
    Estimate,
    /// Reference sigma by power iteration.
    Oracle,
    /// Block-compression bounds for a contiguous partition.
    Blocks,
    /// Bounds against the oracle on seeded random matrices.
    Bench,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Bounds => "bounds",
            Command::Estimate => "estimate",
            Command::Oracle => "oracle",
            Command::Blocks => "blocks",
            Command::Bench => "bench",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    #[value(alias = "json-like")]
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub r: usize,
    pub p: usize,
    pub rel_tol: f64,
    pub r_max: usize,
    pub row_parts: Option<String>,
    pub col_parts: Option<String>,
    pub generator: Option<String>,
    pub trials: usize,
    pub seed: u64,
    pub format: OutputFormat,
    pub with_oracle: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            r: 0,
            p: 1,
            rel_tol: 1e-9,
            r_max: 1000,
            row_parts: None,
            col_parts: None,
            generator: None,
            trials: 10,
            seed: 0,
            format: OutputFormat::Human,
            with_oracle: true,
        }
    }

    pub fn with_input(mut self, path: impl Into<PathBuf>) -> Self {
        self.input = Some(path.into());
        self
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |m: &str| Err(CliError::Usage(m.to_string()));
        if self.p < 1 {
            return usage("--p must be at least 1");
        }
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return usage("--tol must be a positive number");
        }
        if self.r_max < 1 {
            return usage("--r-max must be at least 1");
        }
        if self.trials < 1 {
            return usage("--trials must be at least 1");
        }
        match self.command {
            Command::Bench => {
                if self.generator.is_none() {
                    return usage("bench needs --gen SPEC");
                }
            }
            _ => {
                if self.input.is_none() {
                    return usage("missing input file");
                }
            }
        }
        if self.command == Command::Blocks && (self.row_parts.is_none() || self.col_parts.is_none()) {
            return usage("blocks needs --row-parts and --col-parts");
        }
        Ok(())
    }
}
