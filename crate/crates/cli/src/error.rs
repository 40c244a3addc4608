use crate::document::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("syntax error: {0}")]
    Syntax(#[from] ParseError),
    #[error("{kind} {name}: {message}")]
    Semantic { kind: &'static str, name: String, message: String },
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) => 2,
            CliError::Semantic { .. } | CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<complete_ideals::Error> for CliError {
    fn from(e: complete_ideals::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Domain(s)
    }
}
