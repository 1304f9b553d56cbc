use std::fmt;
use std::process::ExitCode;

use truss_core::extremal::ExtremalError;
use truss_core::peeler::PeelError;
use truss_core::verify::VerifyError;
use truss_core::witness::WitnessError;
use truss_core::GraphError;

/// Failure classes, each with its own exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Io = 3,
    Parse = 4,
    Validation = 5,
    Config = 6,
    Memory = 7,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
    /// The reader of our output went away; not worth reporting.
    pub broken_pipe: bool,
}

impl CliError {
    pub fn new(kind: Kind, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
            broken_pipe: false,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.kind as u8)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            broken_pipe: e.kind() == std::io::ErrorKind::BrokenPipe,
            ..CliError::new(Kind::Io, e.to_string())
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        let kind = match e {
            GraphError::Io(_) => Kind::Io,
            GraphError::Parse { .. }
            | GraphError::SelfLoop { .. }
            | GraphError::DuplicateEdge { .. }
            | GraphError::IsolatedVertex { .. } => Kind::Parse,
            _ => Kind::Validation,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        let kind = match e {
            WitnessError::MemoryCap { .. } => Kind::Memory,
            WitnessError::ZeroK
            | WitnessError::BadProbability(_)
            | WitnessError::NoSets
            | WitnessError::BadExponent { .. } => Kind::Config,
            _ => Kind::Validation,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<ExtremalError> for CliError {
    fn from(e: ExtremalError) -> Self {
        let kind = match e {
            ExtremalError::InvalidParameter { .. } => Kind::Config,
            _ => Kind::Validation,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<PeelError> for CliError {
    fn from(e: PeelError) -> Self {
        CliError::new(Kind::Config, e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        CliError::new(Kind::Validation, e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::new(Kind::Io, e.to_string())
    }
}
