use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use sha2::{Digest as _, Sha256};

use super::LedgerError;
use crate::nucleotide::{pack_bytes, read_uint, unpack_bytes, Nucleotide, NucleotideSequence};

/// Length of a block digest in nt.
pub const DIGEST_LEN: usize = 64;
/// Largest supported proof-of-work difficulty.
pub const MAX_DIFFICULTY: u8 = 16;
/// Fixed part of a serialized block: index, prev digest, payload_len, nonce.
pub const BLOCK_OVERHEAD: usize = 8 + DIGEST_LEN + 8 + 16;

/// 128-bit digest rendered as 64 nucleotides. Orders lexicographically
/// under `A < C < G < T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digest(pub [Nucleotide; DIGEST_LEN]);

impl Digest {
    /// Sixty-four `A`s, the genesis block's parent.
    pub const ZERO: Digest = Digest([Nucleotide::A; DIGEST_LEN]);

    /// Number of leading `A`s.
    pub fn leading_a(&self) -> usize {
        self.0.iter().take_while(|&&n| n == Nucleotide::A).count()
    }

    /// Whether the digest meets difficulty `d`.
    pub fn meets(&self, d: u8) -> bool {
        self.leading_a() >= usize::from(d)
    }

    fn from_hash(bytes: &[u8]) -> Digest {
        let nts = pack_bytes(&bytes[..DIGEST_LEN / 4]);
        let mut out = [Nucleotide::A; DIGEST_LEN];
        out.copy_from_slice(&nts);
        Digest(out)
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in self.0 {
            fmt::Write::write_char(f, n.to_char())?;
        }
        Ok(())
    }
}

/// A block serialized entirely as nucleotides:
/// `index(8) | prev_digest(64) | payload_len(8) | payload(4·payload_len) | nonce(16)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DnaBlock {
    /// Height in the chain.
    pub index: u32,
    /// Digest of the parent block.
    pub prev_digest: Digest,
    /// Declared payload length in bytes.
    pub payload_len: u16,
    payload: NucleotideSequence,
    /// Proof-of-work nonce.
    pub nonce: u32,
}

impl DnaBlock {
    /// Unmined block (nonce 0) carrying `payload`.
    pub fn new(index: u32, prev_digest: Digest, payload: &[u8]) -> Result<Self, LedgerError> {
        let payload_len = u16::try_from(payload.len())
            .map_err(|_| LedgerError::Malformed(format!("payload of {} bytes exceeds 16 bits", payload.len())))?;
        Ok(DnaBlock { index, prev_digest, payload_len, payload: pack_bytes(payload), nonce: 0 })
    }

    /// Packed payload.
    pub fn payload(&self) -> &NucleotideSequence {
        &self.payload
    }

    /// Payload bytes.
    pub fn payload_bytes(&self) -> Vec<u8> {
        unpack_bytes(&self.payload).expect("payload is whole bytes")
    }

    /// Serialized length in nt.
    pub fn serialized_len(&self) -> usize {
        BLOCK_OVERHEAD + self.payload.len()
    }

    /// Nucleotide serialization.
    pub fn to_sequence(&self) -> NucleotideSequence {
        let mut s = NucleotideSequence::with_capacity(self.serialized_len());
        s.push_uint(u64::from(self.index), 8);
        s.extend_from(&self.prev_digest.0);
        s.push_uint(u64::from(self.payload_len), 8);
        s.extend_from(&self.payload);
        s.push_uint(u64::from(self.nonce), 16);
        s
    }

    /// Parses a serialization. The payload is everything between the fixed
    /// fields, whatever `payload_len` claims; a disagreement is a validation
    /// finding, not a parse error.
    pub fn from_sequence(seq: &[Nucleotide]) -> Result<Self, LedgerError> {
        if seq.len() < BLOCK_OVERHEAD || (seq.len() - BLOCK_OVERHEAD) % 4 != 0 {
            return Err(LedgerError::Malformed(format!("block of {} nt: need {BLOCK_OVERHEAD} + 4k", seq.len())));
        }
        let payload_end = seq.len() - 16;
        let mut prev = [Nucleotide::A; DIGEST_LEN];
        prev.copy_from_slice(&seq[8..8 + DIGEST_LEN]);
        Ok(DnaBlock {
            index: read_uint(&seq[..8]) as u32,
            prev_digest: Digest(prev),
            payload_len: read_uint(&seq[72..80]) as u16,
            payload: seq[80..payload_end].into(),
            nonce: read_uint(&seq[payload_end..]) as u32,
        })
    }

    /// Serialization as bytes (the hash input).
    pub fn to_bytes(&self) -> Vec<u8> {
        unpack_bytes(&self.to_sequence()).expect("block serialization is byte aligned")
    }

    /// Truncated SHA-256 of the byte serialization.
    pub fn digest(&self) -> Digest {
        Digest::from_hash(&Sha256::digest(self.to_bytes()))
    }
}

/// Free-function form of [`DnaBlock::digest`].
pub fn digest(block: &DnaBlock) -> Digest {
    block.digest()
}

/// Finds the smallest nonce whose digest starts with `difficulty` `A`s.
/// Expected attempts (`nonce + 1`) are `4^difficulty`.
pub fn mine(index: u32, prev_digest: Digest, payload: &[u8], difficulty: u8) -> Result<DnaBlock, LedgerError> {
    if difficulty > MAX_DIFFICULTY {
        return Err(LedgerError::Difficulty(difficulty));
    }
    let mut block = DnaBlock::new(index, prev_digest, payload)?;
    let bytes = block.to_bytes();
    // The nonce is the last 16 nt, i.e. the last four bytes, big-endian.
    let mut prefix = Sha256::new();
    prefix.update(&bytes[..bytes.len() - 4]);
    for nonce in 0..=u32::MAX {
        let mut h = prefix.clone();
        h.update(nonce.to_be_bytes());
        if Digest::from_hash(&h.finalize()).meets(difficulty) {
            block.nonce = nonce;
            return Ok(block);
        }
    }
    Err(LedgerError::Exhausted(difficulty))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_and_round_trip() {
        let b = DnaBlock::new(3, Digest::ZERO, b"tx").unwrap();
        let s = b.to_sequence();
        assert_eq!(s.len(), 8 + 64 + 8 + 8 + 16);
        assert_eq!(DnaBlock::from_sequence(&s).unwrap(), b);
        assert_eq!(b.payload_bytes(), b"tx");
        assert!(DnaBlock::from_sequence(&s[..s.len() - 1]).is_err());
        assert!(DnaBlock::from_sequence(&s[..50]).is_err());
    }

    #[test]
    fn digest_properties() {
        let a = DnaBlock::new(0, Digest::ZERO, b"a").unwrap();
        assert_eq!(a.digest(), a.clone().digest());
        assert_eq!(a.digest().0.len(), 64);
        let mut s = a.to_sequence();
        s[85] = Nucleotide::from_value(s[85].value() + 1);
        let b = DnaBlock::from_sequence(&s).unwrap();
        assert_ne!(a.digest(), b.digest());
    }

    #[test]
    fn mining_finds_smallest_nonce() {
        let b0 = mine(0, Digest::ZERO, b"", 0).unwrap();
        assert_eq!(b0.nonce, 0);
        let b = mine(1, Digest::ZERO, b"abc", 2).unwrap();
        assert!(b.digest().meets(2));
        for n in 0..b.nonce {
            let mut probe = b.clone();
            probe.nonce = n;
            assert!(!probe.digest().meets(2));
        }
        assert_eq!(mine(0, Digest::ZERO, b"", 17), Err(LedgerError::Difficulty(17)));
    }

    #[test]
    fn digest_order_is_lexicographic() {
        let mut lo = Digest::ZERO;
        let mut hi = Digest::ZERO;
        lo.0[1] = Nucleotide::T;
        hi.0[0] = Nucleotide::C;
        assert!(lo < hi);
        assert_eq!(hi.leading_a(), 0);
        assert_eq!(lo.leading_a(), 1);
    }
}
