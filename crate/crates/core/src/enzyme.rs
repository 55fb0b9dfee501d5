//! Restriction enzymes: recognition-site search and cutting.

use alloc::vec::Vec;

use crate::nucleotide::{Nucleotide, NucleotideSequence, SequenceError};

/// Shortest recognition site accepted by [`EnzymeSpec::new`].
pub const MIN_SITE_LEN: usize = 4;

/// A restriction enzyme modelled as a recognition site plus the offset
/// inside the site where the strand is cleaved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnzymeSpec {
    site: NucleotideSequence,
    cut_offset: usize,
}

impl EnzymeSpec {
    /// Validates `site.len() >= 4` and `cut_offset <= site.len()`.
    pub fn new(site: NucleotideSequence, cut_offset: usize) -> Result<Self, SequenceError> {
        if site.len() < MIN_SITE_LEN {
            return Err(SequenceError::InvalidEnzyme { reason: "recognition site shorter than 4 nt" });
        }
        if cut_offset > site.len() {
            return Err(SequenceError::InvalidEnzyme { reason: "cut offset beyond recognition site" });
        }
        Ok(EnzymeSpec { site, cut_offset })
    }

    /// EcoRI-like default: `GAATTC`, cut after the first base.
    pub fn eco_ri() -> Self {
        use Nucleotide::*;
        EnzymeSpec { site: [G, A, A, T, T, C].as_slice().into(), cut_offset: 1 }
    }

    /// Recognition site.
    pub fn site(&self) -> &NucleotideSequence {
        &self.site
    }

    /// Cleavage position within the site.
    pub fn cut_offset(&self) -> usize {
        self.cut_offset
    }

    /// Stuffing guard: the site without its final base.
    pub fn guard(&self) -> &[Nucleotide] {
        &self.site[..self.site.len() - 1]
    }
}

impl Default for EnzymeSpec {
    fn default() -> Self {
        EnzymeSpec::eco_ri()
    }
}

/// Knuth-Morris-Pratt failure table: `fail[i]` is the length of the longest
/// proper border of `pattern[..=i]`.
pub(crate) fn failure_table(pattern: &[Nucleotide]) -> Vec<usize> {
    let mut fail = alloc::vec![0; pattern.len()];
    let mut k = 0;
    for i in 1..pattern.len() {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// Left-to-right, non-overlapping occurrences of `pattern` in `text`.
/// After a match at `i` the scan restarts at `i + pattern.len()`.
pub(crate) fn find_non_overlapping(text: &[Nucleotide], pattern: &[Nucleotide]) -> Vec<usize> {
    let mut hits = Vec::new();
    if pattern.is_empty() || pattern.len() > text.len() {
        return hits;
    }
    let fail = failure_table(pattern);
    let mut k = 0;
    for (i, &n) in text.iter().enumerate() {
        while k > 0 && n != pattern[k] {
            k = fail[k - 1];
        }
        if n == pattern[k] {
            k += 1;
        }
        if k == pattern.len() {
            hits.push(i + 1 - k);
            k = 0;
        }
    }
    hits
}

/// Start indices of every recognition site, non-overlapping, left to right.
pub fn find_sites(seq: &[Nucleotide], enzyme: &EnzymeSpec) -> Vec<usize> {
    find_non_overlapping(seq, &enzyme.site)
}

/// Splits `seq` at `site_start + cut_offset` for every found site.
///
/// Ligating the fragments in order reproduces `seq`. A cut landing on either
/// end of the sequence yields an empty edge fragment.
pub fn cut(seq: &[Nucleotide], enzyme: &EnzymeSpec) -> Vec<NucleotideSequence> {
    let mut fragments = Vec::new();
    let mut start = 0;
    for site in find_sites(seq, enzyme) {
        let at = site + enzyme.cut_offset;
        fragments.push(NucleotideSequence::from(&seq[start..at]));
        start = at;
    }
    fragments.push(NucleotideSequence::from(&seq[start..]));
    fragments
}
