//! Codon translation for the presentation layer's inspection view.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::nucleotide::{Nucleotide, SequenceError};

/// One row of the genetic code: a triplet of bases.
///
/// Stored in the DNA alphabet; [`fmt::Display`] renders the RNA view
/// (T shown as U), which is how the table is keyed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codon(pub [Nucleotide; 3]);

impl Codon {
    /// Codon with the given table index (`16·first + 4·second + third`).
    pub fn from_index(i: usize) -> Codon {
        let i = i as u8;
        Codon([Nucleotide::from_value(i >> 4), Nucleotide::from_value(i >> 2), Nucleotide::from_value(i)])
    }

    /// Position of this codon in a 64-entry table.
    pub fn index(self) -> usize {
        let [a, b, c] = self.0;
        usize::from(a.value()) * 16 + usize::from(b.value()) * 4 + usize::from(c.value())
    }

    /// Parses an RNA triplet such as `"AUG"`. `T` is accepted as a synonym of `U`.
    pub fn from_rna(s: &str) -> Option<Codon> {
        let mut bases = s.chars().map(|c| match c {
            'U' => Some(Nucleotide::T),
            other => Nucleotide::from_char(other),
        });
        let codon = Codon([bases.next()??, bases.next()??, bases.next()??]);
        bases.next().is_none().then_some(codon)
    }
}

impl fmt::Display for Codon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in self.0 {
            let c = match n {
                Nucleotide::T => 'U',
                other => other.to_char(),
            };
            fmt::Write::write_char(f, c)?;
        }
        Ok(())
    }
}

/// Amino-acid residue letter or translation stop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AminoSymbol {
    /// One-letter residue code.
    Residue(char),
    /// `UAA`, `UAG` or `UGA`.
    Stop,
}

impl fmt::Display for AminoSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AminoSymbol::Residue(c) => write!(f, "{c}"),
            AminoSymbol::Stop => f.write_str("stop"),
        }
    }
}

// Indexed by Codon::index, A<C<G<T in each position; `*` marks stop.
const STANDARD_CODE: &[u8; 64] = b"KNKNTTTTRSRSIIMIQHQHPPPPRRRRLLLLEDEDAAAAGGGGVVVV*Y*YSSSS*CWCLFLF";

/// Total map from the 64 codons to amino-acid symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodonTable {
    entries: [AminoSymbol; 64],
}

impl CodonTable {
    /// The standard genetic code.
    pub fn standard() -> CodonTable {
        let mut entries = [AminoSymbol::Stop; 64];
        for (slot, &b) in entries.iter_mut().zip(STANDARD_CODE.iter()) {
            if b != b'*' {
                *slot = AminoSymbol::Residue(char::from(b));
            }
        }
        CodonTable { entries }
    }

    /// Symbol for one codon.
    pub fn lookup(&self, codon: Codon) -> AminoSymbol {
        self.entries[codon.index()]
    }

    /// All 64 `(codon, symbol)` rows in index order.
    pub fn rows(&self) -> impl Iterator<Item = (Codon, AminoSymbol)> + '_ {
        self.entries.iter().enumerate().map(|(i, s)| (Codon::from_index(i), *s))
    }

    /// Translates codon by codon. Stops are emitted, not obeyed.
    pub fn translate_symbols(&self, seq: &[Nucleotide]) -> Result<Vec<AminoSymbol>, SequenceError> {
        if seq.len() % 3 != 0 {
            return Err(SequenceError::Length { len: seq.len(), unit: 3 });
        }
        Ok(seq.chunks_exact(3).map(|c| self.lookup(Codon([c[0], c[1], c[2]]))).collect())
    }
}

impl Default for CodonTable {
    fn default() -> Self {
        CodonTable::standard()
    }
}

/// Translates `seq` into its amino-acid string, rendering stops as `stop`.
pub fn translate(seq: &[Nucleotide], table: &CodonTable) -> Result<String, SequenceError> {
    use core::fmt::Write;
    let mut out = String::new();
    for sym in table.translate_symbols(seq)? {
        write!(out, "{sym}").expect("writing to a String cannot fail");
    }
    Ok(out)
}
