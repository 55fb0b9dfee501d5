//! File formats and glue for the `dnanet` command-line tool.
//!
//! The simulation itself lives in [`dnanet_core`]; this crate reads and
//! writes FASTA-like sequence files, topology files and CSV statistics.

#![warn(missing_docs)]

pub mod fasta;
pub mod records;
pub mod stats;
pub mod topology;

use std::fmt;

use dnanet_core::channel::ChannelError;
use dnanet_core::ledger::LedgerError;
use dnanet_core::stack::{Address, StackError};
use dnanet_core::SequenceError;

/// A syntax error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Line number.
    pub line: usize,
    /// Column number.
    pub column: usize,
    /// What went wrong.
    pub message: String,
}

impl ParseError {
    /// Builds a parse error.
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Everything a command can fail with.
///
/// Each variant displays as `<Kind>: <details>` so the first word of an
/// error line names the failure.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Reading or writing a file failed.
    #[error("IoError: {path}: {source}")]
    Io {
        /// File involved.
        path: String,
        /// Underlying error.
        source: std::io::Error,
    },
    /// Malformed input file.
    #[error("ParseError: {0}")]
    Parse(#[from] ParseError),
    /// CSV serialization failed.
    #[error("CsvError: {0}")]
    Csv(#[from] csv::Error),
    /// Bad argument combination caught after flag parsing.
    #[error("UsageError: {0}")]
    Usage(String),
    /// A receiver decoded something other than what was sent.
    #[error("PayloadMismatchError: node {0} decoded a different payload")]
    Mismatch(Address),
    /// The message reached no receiver.
    #[error("NoDeliveryError: no node received the message")]
    Undelivered,
    /// Stack encode or decode failure.
    #[error(transparent)]
    Stack(#[from] StackError),
    /// Channel or topology failure.
    #[error(transparent)]
    Channel(#[from] ChannelError),
    /// Ledger failure.
    #[error(transparent)]
    Ledger(#[from] LedgerError),
    /// Sequence-level failure.
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

impl Error {
    /// Process exit code: 2 for usage errors, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Usage(_) => 2,
            _ => 1,
        }
    }

    /// Attaches a file path to an IO error.
    pub fn io(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
        move |source| Error::Io { path: path.display().to_string(), source }
    }
}
