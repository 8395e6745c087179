//! Verification harness around `wpyramid-core`: run configuration, check
//! suites, JSON reports, module export and text diagrams.

pub mod config;
pub mod diagram;
pub mod module;
pub mod pyramids;
pub mod report;
pub mod suites;

pub use config::{PyramidSelector, RunConfig, Suite};
pub use report::{Outcome, Record, Report, Status};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] wpyramid_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Write a file, creating parent directories.
pub fn write_file(path: &std::path::Path, contents: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, contents)?;
    Ok(())
}
