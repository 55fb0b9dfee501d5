//! Triple-repetition redundancy with majority-vote decoding.

use alloc::vec::Vec;

use super::StackError;
use crate::nucleotide::{Nucleotide, NucleotideSequence, SequenceError};

/// Datalink redundancy mode, 2 nt on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EccMode {
    /// `AA`: body is the bare network packet.
    None,
    /// `AC`: every base repeated three times.
    #[default]
    Triple,
}

impl EccMode {
    pub(crate) fn code(self) -> u64 {
        match self {
            EccMode::None => 0,
            EccMode::Triple => 1,
        }
    }

    pub(crate) fn from_code(v: u64) -> Option<Self> {
        match v {
            0 => Some(EccMode::None),
            1 => Some(EccMode::Triple),
            _ => None,
        }
    }
}

/// Outcome of voting on one triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleVote {
    /// All three agree.
    Clean(Nucleotide),
    /// Two agree; the third was outvoted.
    Corrected(Nucleotide),
    /// Three distinct bases.
    Uncorrectable,
}

impl TripleVote {
    /// The decided base, if any.
    pub fn base(self) -> Option<Nucleotide> {
        match self {
            TripleVote::Clean(n) | TripleVote::Corrected(n) => Some(n),
            TripleVote::Uncorrectable => None,
        }
    }
}

/// Majority vote over one triple.
pub fn majority([a, b, c]: [Nucleotide; 3]) -> TripleVote {
    if a == b && b == c {
        TripleVote::Clean(a)
    } else if a == b || a == c {
        TripleVote::Corrected(a)
    } else if b == c {
        TripleVote::Corrected(b)
    } else {
        TripleVote::Uncorrectable
    }
}

/// Identity for `None`; each base written three times for `Triple`.
pub fn ecc_encode(seq: &[Nucleotide], mode: EccMode) -> NucleotideSequence {
    match mode {
        EccMode::None => seq.into(),
        EccMode::Triple => seq.iter().flat_map(|&n| [n; 3]).collect(),
    }
}

/// Votes every triple without failing on uncorrectable ones.
pub fn decode_triples(seq: &[Nucleotide]) -> Result<Vec<TripleVote>, StackError> {
    if seq.len() % 3 != 0 {
        return Err(SequenceError::Length { len: seq.len(), unit: 3 }.into());
    }
    Ok(seq.chunks_exact(3).map(|t| majority([t[0], t[1], t[2]])).collect())
}

/// Inverse of [`ecc_encode`]; triple mode corrects one substitution per triple.
pub fn ecc_decode(seq: &[Nucleotide], mode: EccMode) -> Result<NucleotideSequence, StackError> {
    match mode {
        EccMode::None => Ok(seq.into()),
        EccMode::Triple => decode_triples(seq)?
            .into_iter()
            .enumerate()
            .map(|(triple, v)| v.base().ok_or(StackError::Uncorrectable { triple }))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn seq(s: &str) -> NucleotideSequence {
        s.parse().unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(ecc_encode(&seq("ACG"), EccMode::Triple).to_string(), "AAACCCGGG");
        assert_eq!(ecc_encode(&seq("ACG"), EccMode::None).to_string(), "ACG");
        assert!(ecc_encode(&seq(""), EccMode::Triple).is_empty());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(ecc_decode(&seq("AAACCCGGG"), EccMode::Triple).unwrap(), seq("ACG"));
        assert_eq!(ecc_decode(&seq("AATCCCGGG"), EccMode::Triple).unwrap(), seq("ACG"));
        assert_eq!(ecc_decode(&seq("ACT"), EccMode::Triple), Err(StackError::Uncorrectable { triple: 0 }));
        assert_eq!(
            ecc_decode(&seq("AAAC"), EccMode::Triple),
            Err(StackError::Sequence(SequenceError::Length { len: 4, unit: 3 }))
        );
    }

    #[test]
    fn majority_positions() {
        use Nucleotide::*;
        assert_eq!(majority([A, A, A]), TripleVote::Clean(A));
        assert_eq!(majority([G, A, A]), TripleVote::Corrected(A));
        assert_eq!(majority([A, G, A]), TripleVote::Corrected(A));
        assert_eq!(majority([A, A, G]), TripleVote::Corrected(A));
        assert_eq!(majority([A, C, G]), TripleVote::Uncorrectable);
    }
}
