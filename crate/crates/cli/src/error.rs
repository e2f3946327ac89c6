use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Schema {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}:{line}:{column}: in {field}: {message}")]
    Expr {
        path: String,
        field: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Engine { path: String, source: rescycle::Error },
}

impl CliError {
    /// `3` for anything that stops a case from being read, `2` for engine refusals.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Schema { .. } | CliError::Expr { .. } => 3,
            CliError::Engine { source, .. } if source.is_parse() => 3,
            CliError::Engine { .. } => 2,
        }
    }
}
