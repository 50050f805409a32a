use std::fmt;

/// Failure class, which fixes the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Invalid flags, configuration values or method names.
    Config,
    /// Unreadable or malformed input data.
    Data,
    /// Anything that fails while running or writing results.
    Runtime,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Config => 1,
            ErrorKind::Data => 2,
            ErrorKind::Runtime => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Config, message: message.into() }
    }

    pub fn data(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Data, message: message.into() }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Runtime, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<fairseed::Error> for CliError {
    fn from(e: fairseed::Error) -> Self {
        use fairseed::Error as E;
        let kind = match &e {
            E::Config(_) | E::BudgetOutOfRange { .. } => ErrorKind::Config,
            E::Parse { .. } | E::EmptyGraph | E::NodeOutOfRange { .. } | E::NodeCountMismatch { .. } => ErrorKind::Data,
            E::Io(_) | E::Unrealizable { .. } | E::Critical(_) => ErrorKind::Runtime,
        };
        CliError { kind, message: e.to_string() }
    }
}
