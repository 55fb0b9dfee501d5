//! FASTA-like sequence files.
//!
//! Lines starting with `>` open a record; the text after `>` is its header.
//! Sequence lines hold uppercase `ACGT` only, at most [`LINE_WIDTH`] per line.
//! Blank lines are ignored.

use std::fmt::Write as _;

use dnanet_core::{Nucleotide, NucleotideSequence};

use crate::ParseError;

/// Maximum bases per sequence line, for both reading and writing.
pub const LINE_WIDTH: usize = 80;

/// One header plus its sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    /// Header text without the leading `>`.
    pub header: String,
    /// Concatenated sequence lines.
    pub seq: NucleotideSequence,
}

impl Record {
    /// Builds a record.
    pub fn new(header: impl Into<String>, seq: NucleotideSequence) -> Self {
        Record { header: header.into(), seq }
    }
}

/// Parses every record in `text`.
pub fn parse(text: &str) -> Result<Vec<Record>, ParseError> {
    let mut out: Vec<Record> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if let Some(h) = line.strip_prefix('>') {
            out.push(Record::new(h.trim_end(), NucleotideSequence::new()));
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let Some(rec) = out.last_mut() else {
            return Err(ParseError::new(lineno, 1, "sequence data before the first header"));
        };
        if line.len() > LINE_WIDTH {
            return Err(ParseError::new(lineno, LINE_WIDTH + 1, format!("line longer than {LINE_WIDTH} bases")));
        }
        for (j, ch) in line.chars().enumerate() {
            match Nucleotide::from_char(ch) {
                Some(n) => rec.seq.push(n),
                None => return Err(ParseError::new(lineno, j + 1, format!("invalid character {ch:?}"))),
            }
        }
    }
    Ok(out)
}

/// Renders records, wrapping sequences at [`LINE_WIDTH`].
pub fn render(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        let _ = writeln!(out, ">{}", r.header);
        for chunk in r.seq.chunks(LINE_WIDTH) {
            out.extend(chunk.iter().map(|n| n.to_char()));
            out.push('\n');
        }
    }
    out
}

/// Parses a record header of the form `<kind> <index>`.
pub(crate) fn indexed_header(header: &str, kind: &str) -> Option<u32> {
    let mut parts = header.split_whitespace();
    if parts.next()? != kind {
        return None;
    }
    let idx = parts.next()?.parse().ok()?;
    parts.next().is_none().then_some(idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_wraps_lines() {
        let seq: NucleotideSequence = "ACGT".repeat(50).parse().unwrap();
        let recs = vec![Record::new("frame 0", seq), Record::new("empty", NucleotideSequence::new())];
        let text = render(&recs);
        assert!(text.lines().all(|l| l.len() <= LINE_WIDTH));
        assert_eq!(text.lines().nth(1).unwrap().len(), 80);
        assert_eq!(parse(&text).unwrap(), recs);
    }

    #[test]
    fn reports_position_of_bad_character() {
        let e = parse(">x\nACGT\nACgT\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        let e = parse(">x\nACNT").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn rejects_long_lines_and_orphan_data() {
        let long = format!(">x\n{}\n", "A".repeat(81));
        assert_eq!(parse(&long).unwrap_err().column, 81);
        assert_eq!(parse("ACGT\n").unwrap_err().line, 1);
    }

    #[test]
    fn blank_lines_and_crlf() {
        let recs = parse(">a\r\nAC\r\n\r\nGT\r\n").unwrap();
        assert_eq!(recs[0].header, "a");
        assert_eq!(recs[0].seq.to_string(), "ACGT");
    }

    #[test]
    fn header_index() {
        assert_eq!(indexed_header("block 7", "block"), Some(7));
        assert_eq!(indexed_header("block", "block"), None);
        assert_eq!(indexed_header("frame 7", "block"), None);
        assert_eq!(indexed_header("block 7 x", "block"), None);
    }
}
