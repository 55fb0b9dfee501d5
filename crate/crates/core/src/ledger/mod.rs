//! A blockchain whose blocks are nucleotide strands.
//!
//! Replication copies the chain the way a dividing cell copies its DNA,
//! occasionally mutating it; validation is the fitness test a mutated copy
//! must pass before it may grow, and [`ReplicaSet::resolve_fork`] keeps the
//! longest surviving chain.

use alloc::string::String;
use alloc::vec::Vec;

mod block;
mod chain;
mod replica;

pub use block::{digest, mine, Digest, DnaBlock, BLOCK_OVERHEAD, DIGEST_LEN, MAX_DIFFICULTY};
pub use chain::{confirmed_prefix, extend, validate_chain, DnaChain, Violation, CONFIRMATION_DEPTH};
pub use replica::{replicate, resolve_fork, ReplicaSet};

use crate::nucleotide::SequenceError;

/// Errors from ledger operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LedgerError {
    /// Difficulty above [`MAX_DIFFICULTY`].
    #[error("DifficultyError: difficulty {0} exceeds 16")]
    Difficulty(u8),
    /// No 32-bit nonce met the difficulty.
    #[error("ExhaustedError: nonce space exhausted at difficulty {0}")]
    Exhausted(u8),
    /// The chain failed validation.
    #[error("ValidationError: {} violation(s)", .0.len())]
    Validation(Vec<Violation>),
    /// Every replica failed validation.
    #[error("NoValidChainError: no replica validates")]
    NoValidChain,
    /// Resolution would overwrite a confirmed block.
    #[error("ConfirmationConflictError: replica {replica} has confirmed block {block} that the winner does not")]
    ConfirmationConflict {
        /// Replica whose confirmed prefix conflicts.
        replica: String,
        /// First conflicting height.
        block: usize,
    },
    /// Probability outside `[0, 1]`.
    #[error("RangeError: p_mut = {0} out of range")]
    Range(f64),
    /// Serialization does not fit the block layout.
    #[error("MalformedBlockError: {0}")]
    Malformed(String),
    /// Underlying nucleotide error.
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}
