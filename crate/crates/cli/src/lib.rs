//! Command-line front end for the `optical-bloch` library: single
//! trajectories, parameter maps, figure presets, steady states and
//! physicality checks.
//!
//! Every command is a pure function from parsed arguments to an [`Outcome`]
//! (files plus stdout text); [`execute`] writes the files.

pub mod args;
pub mod output;
mod run;

use std::path::{Path, PathBuf};

use optical_bloch::BlochError;
use thiserror::Error;

pub use args::{Cli, Command};
pub use run::{parse_initial, render_figure, run};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] BlochError),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 1 for every failure that is not a usage error; clap exits with 2 on
    /// its own.
    pub fn exit_code(&self) -> u8 {
        1
    }
}

/// One output file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub file_name: String,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    /// Directory for `artifacts`; `None` when there are none.
    pub out_dir: Option<PathBuf>,
    /// Explicit file for the stdout JSON (steady-state, validate).
    pub copy_stdout_to: Option<PathBuf>,
    pub stdout: String,
    pub warnings: Vec<String>,
    pub exit_code: u8,
}

pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    artifacts
        .iter()
        .map(|a| {
            let path = dir.join(&a.file_name);
            std::fs::write(&path, &a.bytes).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(path)
        })
        .collect()
}

/// Runs a parsed command, writes its files and returns the exit code.
pub fn execute(cli: &Cli) -> u8 {
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    let mut written = Vec::new();
    if let Some(dir) = &outcome.out_dir {
        match write_artifacts(dir, &outcome.artifacts) {
            Ok(paths) => written = paths,
            Err(e) => {
                eprintln!("error: {e}");
                return e.exit_code();
            }
        }
    }
    if let Some(path) = &outcome.copy_stdout_to {
        if let Err(source) = std::fs::write(path, &outcome.stdout) {
            eprintln!(
                "error: {}",
                CliError::Io {
                    path: path.clone(),
                    source
                }
            );
            return 1;
        }
    }
    print!("{}", outcome.stdout);
    for p in written {
        println!("wrote {}", p.display());
    }
    outcome.exit_code
}
