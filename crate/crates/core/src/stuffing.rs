//! Guard stuffing, so payload material can never spell a recognition site.
//!
//! After every left-to-right, non-overlapping occurrence of the guard an `A`
//! is inserted. With the default guard `GAATT` this means `GAATTC` can only
//! appear where the framing put it.

use alloc::string::ToString;

use crate::enzyme::{failure_table, find_non_overlapping};
use crate::nucleotide::{Nucleotide, NucleotideSequence, SequenceError};

/// The base inserted after each guard occurrence.
pub const STUFF_BASE: Nucleotide = Nucleotide::A;

/// Errors with [`SequenceError::Border`] if `guard` is empty or has a proper
/// prefix equal to a proper suffix.
pub fn check_border_free(guard: &[Nucleotide]) -> Result<(), SequenceError> {
    let bordered = match failure_table(guard).last() {
        None => true,
        Some(&b) => b > 0,
    };
    if bordered {
        return Err(SequenceError::Border { guard: NucleotideSequence::from(guard).to_string() });
    }
    Ok(())
}

/// Inserts [`STUFF_BASE`] after every occurrence of `guard` in `payload`.
pub fn stuff(payload: &[Nucleotide], guard: &[Nucleotide]) -> Result<NucleotideSequence, SequenceError> {
    check_border_free(guard)?;
    let hits = find_non_overlapping(payload, guard);
    let mut out = NucleotideSequence::with_capacity(payload.len() + hits.len());
    let mut start = 0;
    for h in hits {
        let end = h + guard.len();
        out.extend_from(&payload[start..end]);
        out.push(STUFF_BASE);
        start = end;
    }
    out.extend_from(&payload[start..]);
    Ok(out)
}

/// Removes the nucleotide following each guard occurrence.
pub fn destuff(stuffed: &[Nucleotide], guard: &[Nucleotide]) -> Result<NucleotideSequence, SequenceError> {
    check_border_free(guard)?;
    let fail = failure_table(guard);
    let mut out = NucleotideSequence::with_capacity(stuffed.len());
    let mut k = 0;
    let mut iter = stuffed.iter().copied().enumerate();
    while let Some((i, n)) = iter.next() {
        out.push(n);
        while k > 0 && n != guard[k] {
            k = fail[k - 1];
        }
        if n == guard[k] {
            k += 1;
        }
        if k == guard.len() {
            if iter.next().is_none() {
                return Err(SequenceError::Truncation { position: i + 1 - k });
            }
            k = 0;
        }
    }
    Ok(out)
}
