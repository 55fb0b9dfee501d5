use alloc::vec::Vec;
use core::fmt;

use super::block::{mine, Digest, DnaBlock};
use super::LedgerError;

/// Blocks buried this deep are final.
pub const CONFIRMATION_DEPTH: usize = 6;

/// An ordered chain of blocks mined at a fixed difficulty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DnaChain {
    blocks: Vec<DnaBlock>,
    difficulty: u8,
}

impl DnaChain {
    /// Mines a genesis block (index 0, parent [`Digest::ZERO`]).
    pub fn genesis(difficulty: u8, payload: &[u8]) -> Result<Self, LedgerError> {
        let block = mine(0, Digest::ZERO, payload, difficulty)?;
        Ok(DnaChain { blocks: alloc::vec![block], difficulty })
    }

    /// Wraps blocks as-is; nothing is checked.
    pub fn from_blocks(blocks: Vec<DnaBlock>, difficulty: u8) -> Self {
        DnaChain { blocks, difficulty }
    }

    #[allow(missing_docs)]
    pub fn blocks(&self) -> &[DnaBlock] {
        &self.blocks
    }

    #[allow(missing_docs)]
    pub fn into_blocks(self) -> Vec<DnaBlock> {
        self.blocks
    }

    /// Required number of leading `A`s per digest.
    pub fn difficulty(&self) -> u8 {
        self.difficulty
    }

    #[allow(missing_docs)]
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    #[allow(missing_docs)]
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Last block.
    pub fn tip(&self) -> Option<&DnaBlock> {
        self.blocks.last()
    }

    /// Total serialized length in nt.
    pub fn serialized_len(&self) -> usize {
        self.blocks.iter().map(DnaBlock::serialized_len).sum()
    }
}

/// One failed check, with the offending block height.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    /// The chain has no blocks.
    MissingGenesis,
    /// Block 0's parent digest is not all `A`.
    GenesisParent,
    /// Heights are not consecutive from 0.
    Index {
        #[allow(missing_docs)]
        block: usize,
        #[allow(missing_docs)]
        found: u32,
    },
    /// `prev_digest` does not match the previous block.
    BrokenLink {
        #[allow(missing_docs)]
        block: usize,
    },
    /// Digest lacks the required leading `A`s.
    InsufficientWork {
        #[allow(missing_docs)]
        block: usize,
    },
    /// `payload_len` disagrees with the payload carried.
    PayloadLength {
        #[allow(missing_docs)]
        block: usize,
        #[allow(missing_docs)]
        declared: u16,
        #[allow(missing_docs)]
        actual: usize,
    },
}

impl Violation {
    /// Height the violation refers to; `None` for an empty chain.
    pub fn block(&self) -> Option<usize> {
        match *self {
            Violation::MissingGenesis => None,
            Violation::GenesisParent => Some(0),
            Violation::Index { block, .. }
            | Violation::BrokenLink { block }
            | Violation::InsufficientWork { block }
            | Violation::PayloadLength { block, .. } => Some(block),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingGenesis => write!(f, "missing genesis block"),
            Violation::GenesisParent => write!(f, "block 0: genesis parent digest is not all A"),
            Violation::Index { block, found } => write!(f, "block {block}: index field is {found}"),
            Violation::BrokenLink { block } => {
                write!(f, "block {block}: prev_digest does not match block {}", block - 1)
            }
            Violation::InsufficientWork { block } => write!(f, "block {block}: proof of work not met"),
            Violation::PayloadLength { block, declared, actual } => {
                write!(f, "block {block}: payload_len {declared} but payload holds {actual} bytes")
            }
        }
    }
}

/// Runs every check on every block and returns all violations found.
pub fn validate_chain(chain: &DnaChain) -> Result<(), Vec<Violation>> {
    let mut v = Vec::new();
    let Some(genesis) = chain.blocks.first() else {
        return Err(alloc::vec![Violation::MissingGenesis]);
    };
    if genesis.prev_digest != Digest::ZERO {
        v.push(Violation::GenesisParent);
    }
    let mut prev: Option<Digest> = None;
    for (i, b) in chain.blocks.iter().enumerate() {
        if b.index as usize != i {
            v.push(Violation::Index { block: i, found: b.index });
        }
        let actual = b.payload().len() / 4;
        if usize::from(b.payload_len) != actual {
            v.push(Violation::PayloadLength { block: i, declared: b.payload_len, actual });
        }
        if let Some(p) = prev {
            if b.prev_digest != p {
                v.push(Violation::BrokenLink { block: i });
            }
        }
        let d = b.digest();
        if !d.meets(chain.difficulty) {
            v.push(Violation::InsufficientWork { block: i });
        }
        prev = Some(d);
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

/// Mines one block carrying `payload` on top of a valid chain.
pub fn extend(chain: &DnaChain, payload: &[u8]) -> Result<DnaChain, LedgerError> {
    validate_chain(chain).map_err(LedgerError::Validation)?;
    let tip = chain.tip().expect("valid chains have a genesis");
    let block = mine(tip.index + 1, tip.digest(), payload, chain.difficulty)?;
    let mut next = chain.clone();
    next.blocks.push(block);
    Ok(next)
}

/// Blocks with at least `depth` blocks above them.
pub fn confirmed_prefix(chain: &DnaChain, depth: usize) -> &[DnaBlock] {
    let n = chain.len().saturating_sub(depth);
    &chain.blocks[..n]
}
