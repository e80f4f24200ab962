use std::fmt;

use invgrass::Error;

/// Failures that end a task, split by exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable or inconsistent input: exit 4.
    Malformed(String),
    /// Input that parses but fails a mathematical check: exit 2.
    Validation(String),
}

impl CliError {
    pub fn from_lib(e: Error) -> Self {
        match e {
            Error::NonMonic { .. }
            | Error::DegreeTooSmall { .. }
            | Error::UnknownSymbol(_)
            | Error::DuplicateSymbol(_)
            | Error::BaseMarkerOutOfRange { .. }
            | Error::Parse { .. }
            | Error::DimensionMismatch { .. }
            | Error::RankDeficient { .. }
            | Error::MalformedMultiset(_)
            | Error::NotPrime(_)
            | Error::FieldMismatch
            | Error::Unsupported(_) => CliError::Malformed(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }

    pub fn context(self, path: &str) -> Self {
        match self {
            CliError::Malformed(m) => CliError::Malformed(format!("{path}: {m}")),
            CliError::Validation(m) => CliError::Validation(format!("{path}: {m}")),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => 4,
            CliError::Validation(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Malformed(m) | CliError::Validation(m) => m,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.message())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::from_lib(e)
    }
}
