use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: line {line}: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error("{path}: line {line}: time {t_s} s does not increase (previous {prev_s} s)")]
    Ordering { path: String, line: usize, t_s: f64, prev_s: f64 },

    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),

    #[error("configuration: {0}")]
    Config(String),

    #[error("{path}: empty input")]
    Empty { path: String },

    #[error("{stage} ({path}): {source}")]
    Stage {
        stage: &'static str,
        path: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Model(#[from] jointfatigue_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// 2 for parse and configuration problems, 3 for model and physics
    /// precondition violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Model(_) => 3,
            Error::Stage { source, .. } => source.exit_code(),
            _ => 2,
        }
    }

    pub fn at_stage(self, stage: &'static str, path: impl Into<String>) -> Self {
        Error::Stage { stage, path: path.into(), source: Box::new(self) }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str, path: &str) -> Result<T>;
}

impl<T, E: Into<Error>> StageExt<T> for std::result::Result<T, E> {
    fn stage(self, stage: &'static str, path: &str) -> Result<T> {
        self.map_err(|e| e.into().at_stage(stage, path))
    }
}
