//! The four-letter alphabet, sequences over it and the byte codec.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Deref, DerefMut};
use core::str::FromStr;

/// Errors raised by the nucleotide primitives.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    /// Length is not a whole number of units (bytes, codons, triples).
    #[error("LengthError: length {len} nt is not a multiple of {unit}")]
    Length {
        /// Offending length in nucleotides.
        len: usize,
        /// Required divisor.
        unit: usize,
    },
    /// A character outside `ACGT` was found while parsing.
    #[error("invalid nucleotide {found:?} at position {position}")]
    InvalidBase {
        /// Zero-based character offset.
        position: usize,
        /// Offending character.
        found: char,
    },
    /// Stuffing guard has a proper prefix equal to a proper suffix.
    #[error("BorderError: guard {guard} has a nontrivial border")]
    Border {
        /// Rendered guard.
        guard: String,
    },
    /// A guard occurrence ends the stuffed input with nothing to remove.
    #[error("TruncationError: guard at position {position} has no stuffed nucleotide after it")]
    Truncation {
        /// Start of the trailing guard occurrence.
        position: usize,
    },
    /// Enzyme recognition site or cut offset out of bounds.
    #[error("invalid enzyme: {reason}")]
    InvalidEnzyme {
        /// Which bound was violated.
        reason: &'static str,
    },
}

/// A single DNA base. Numeric values follow `A=0, C=1, G=2, T=3`, so the
/// derived ordering is both lexicographic and numeric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Nucleotide {
    /// Adenine.
    A = 0,
    /// Cytosine.
    C = 1,
    /// Guanine.
    G = 2,
    /// Thymine.
    T = 3,
}

impl Nucleotide {
    /// All four bases in value order.
    pub const ALL: [Nucleotide; 4] = [Nucleotide::A, Nucleotide::C, Nucleotide::G, Nucleotide::T];

    /// Two-bit numeric value.
    #[inline]
    pub const fn value(self) -> u8 {
        self as u8
    }

    /// Base for the low two bits of `v`.
    #[inline]
    pub const fn from_value(v: u8) -> Nucleotide {
        Self::ALL[(v & 0b11) as usize]
    }

    /// Watson-Crick complement (A↔T, C↔G).
    #[inline]
    pub const fn complement(self) -> Nucleotide {
        Self::from_value(3 - self.value())
    }

    /// Uppercase DNA letter.
    pub const fn to_char(self) -> char {
        match self {
            Nucleotide::A => 'A',
            Nucleotide::C => 'C',
            Nucleotide::G => 'G',
            Nucleotide::T => 'T',
        }
    }

    /// Parses an uppercase DNA letter.
    pub const fn from_char(c: char) -> Option<Nucleotide> {
        match c {
            'A' => Some(Nucleotide::A),
            'C' => Some(Nucleotide::C),
            'G' => Some(Nucleotide::G),
            'T' => Some(Nucleotide::T),
            _ => None,
        }
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// An ordered strand of nucleotides.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NucleotideSequence(Vec<Nucleotide>);

impl NucleotideSequence {
    /// Empty sequence.
    pub const fn new() -> Self {
        NucleotideSequence(Vec::new())
    }

    /// Empty sequence with room for `n` bases.
    pub fn with_capacity(n: usize) -> Self {
        NucleotideSequence(Vec::with_capacity(n))
    }

    /// `n` copies of `base`.
    pub fn repeat(base: Nucleotide, n: usize) -> Self {
        NucleotideSequence(alloc::vec![base; n])
    }

    /// Consumes the sequence, returning the bases.
    pub fn into_inner(self) -> Vec<Nucleotide> {
        self.0
    }

    /// Appends `width` nucleotides encoding `value` as MSB-first base 4.
    ///
    /// Bits of `value` above `2 * width` are discarded.
    pub fn push_uint(&mut self, value: u64, width: usize) {
        for i in (0..width).rev() {
            let shift = 2 * i;
            let digit = if shift >= 64 { 0 } else { (value >> shift) & 0b11 };
            self.0.push(Nucleotide::from_value(digit as u8));
        }
    }

    /// Appends a copy of `other`.
    pub fn extend_from(&mut self, other: &[Nucleotide]) {
        self.0.extend_from_slice(other);
    }

    /// Reverse complement.
    pub fn reverse_complement(&self) -> NucleotideSequence {
        self.0.iter().rev().map(|n| n.complement()).collect()
    }
}

/// Reads an MSB-first base-4 integer from `digits` (at most 32 nt).
pub fn read_uint(digits: &[Nucleotide]) -> u64 {
    digits.iter().fold(0u64, |acc, n| (acc << 2) | u64::from(n.value()))
}

impl Deref for NucleotideSequence {
    type Target = Vec<Nucleotide>;
    fn deref(&self) -> &Vec<Nucleotide> {
        &self.0
    }
}

impl DerefMut for NucleotideSequence {
    fn deref_mut(&mut self) -> &mut Vec<Nucleotide> {
        &mut self.0
    }
}

impl AsRef<[Nucleotide]> for NucleotideSequence {
    fn as_ref(&self) -> &[Nucleotide] {
        &self.0
    }
}

impl From<Vec<Nucleotide>> for NucleotideSequence {
    fn from(v: Vec<Nucleotide>) -> Self {
        NucleotideSequence(v)
    }
}

impl From<&[Nucleotide]> for NucleotideSequence {
    fn from(v: &[Nucleotide]) -> Self {
        NucleotideSequence(v.to_vec())
    }
}

impl FromIterator<Nucleotide> for NucleotideSequence {
    fn from_iter<I: IntoIterator<Item = Nucleotide>>(iter: I) -> Self {
        NucleotideSequence(iter.into_iter().collect())
    }
}

impl Extend<Nucleotide> for NucleotideSequence {
    fn extend<I: IntoIterator<Item = Nucleotide>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a NucleotideSequence {
    type Item = &'a Nucleotide;
    type IntoIter = core::slice::Iter<'a, Nucleotide>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for NucleotideSequence {
    type Item = Nucleotide;
    type IntoIter = alloc::vec::IntoIter<Nucleotide>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl fmt::Display for NucleotideSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.0 {
            fmt::Write::write_char(f, n.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for NucleotideSequence {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, c)| Nucleotide::from_char(c).ok_or(SequenceError::InvalidBase { position, found: c }))
            .collect()
    }
}

/// Packs each byte into four nucleotides, most significant bit pair first.
pub fn pack_bytes(data: &[u8]) -> NucleotideSequence {
    let mut out = NucleotideSequence::with_capacity(data.len() * 4);
    for &b in data {
        out.push_uint(u64::from(b), 4);
    }
    out
}

/// Inverse of [`pack_bytes`].
pub fn unpack_bytes(seq: &[Nucleotide]) -> Result<Vec<u8>, SequenceError> {
    if seq.len() % 4 != 0 {
        return Err(SequenceError::Length { len: seq.len(), unit: 4 });
    }
    Ok(seq.chunks_exact(4).map(|q| read_uint(q) as u8).collect())
}

/// Joins two strands: `left` followed by `right`.
pub fn ligate(left: &[Nucleotide], right: &[Nucleotide]) -> NucleotideSequence {
    let mut out = NucleotideSequence::with_capacity(left.len() + right.len());
    out.extend_from(left);
    out.extend_from(right);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn seq(s: &str) -> NucleotideSequence {
        s.parse().unwrap()
    }

    #[test]
    fn values_and_complement() {
        for (i, n) in Nucleotide::ALL.iter().enumerate() {
            assert_eq!(n.value() as usize, i);
            assert_eq!(Nucleotide::from_value(i as u8), *n);
            assert_eq!(n.complement().complement(), *n);
        }
        assert_eq!(Nucleotide::A.complement(), Nucleotide::T);
        assert_eq!(Nucleotide::C.complement(), Nucleotide::G);
    }

    #[test]
    fn pack_examples() {
        assert!(pack_bytes(&[]).is_empty());
        assert_eq!(pack_bytes(&[0x00]).to_string(), "AAAA");
        assert_eq!(pack_bytes(&[0x1B]).to_string(), "ACGT");
    }

    #[test]
    fn unpack_examples() {
        assert_eq!(unpack_bytes(&seq("AAAA")).unwrap(), vec![0x00]);
        assert_eq!(unpack_bytes(&seq("ACGT")).unwrap(), vec![0x1B]);
        assert_eq!(unpack_bytes(&seq("AAA")), Err(SequenceError::Length { len: 3, unit: 4 }));
    }

    #[test]
    fn ligate_examples() {
        assert_eq!(ligate(&seq("ACG"), &seq("T")), seq("ACGT"));
        assert_eq!(ligate(&seq(""), &seq("ACG")), seq("ACG"));
        assert_eq!(ligate(&seq("ACG"), &seq("")), seq("ACG"));
    }

    #[test]
    fn uint_fields_are_msb_first() {
        let mut s = NucleotideSequence::new();
        s.push_uint(0xFFFF, 8);
        assert_eq!(s.to_string(), "TTTTTTTT");
        let mut s = NucleotideSequence::new();
        s.push_uint(6, 4);
        assert_eq!(s.to_string(), "AACG");
        assert_eq!(read_uint(&s), 6);
    }

    #[test]
    fn parse_reports_position() {
        let err = "ACGU".parse::<NucleotideSequence>().unwrap_err();
        assert_eq!(err, SequenceError::InvalidBase { position: 3, found: 'U' });
        assert!("acgt".parse::<NucleotideSequence>().is_err());
    }

    #[test]
    fn reverse_complement() {
        assert_eq!(seq("AACG").reverse_complement(), seq("CGTT"));
    }
}
