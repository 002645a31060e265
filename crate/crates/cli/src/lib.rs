//! File formats and text surfaces for the packing workbench: the
//! certificate schema, ledger tables, and SVG rendering. The binary in
//! `main.rs` wires these to subcommands.

pub mod certificate;
pub mod svg;
pub mod table;

/// Errors carry their process exit code: `1` for invalid input (bad
/// arguments, malformed files, violated preconditions), `2` for exact
/// verification failures on content that parsed fine.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 2,
            _ => 1,
        }
    }
}

impl From<sqpack_core::Error> for CliError {
    fn from(err: sqpack_core::Error) -> Self {
        match err {
            // geometry that parsed but fails the exact checks
            sqpack_core::Error::InvalidPacking(msg) => CliError::Verification(msg),
            other => CliError::Invalid(other.to_string()),
        }
    }
}
