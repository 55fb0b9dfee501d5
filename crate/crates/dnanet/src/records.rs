//! Frame files (`>frame <i>`) and chain files (`>block <index>`).

use dnanet_core::ledger::{DnaBlock, DnaChain};
use dnanet_core::stack::Frame;

use crate::fasta::{self, indexed_header, Record};
use crate::{Error, ParseError};

/// Renders frames in transmission order.
pub fn render_frames(frames: &[Frame]) -> String {
    let recs: Vec<Record> =
        frames.iter().enumerate().map(|(i, f)| Record::new(format!("frame {i}"), f.to_sequence())).collect();
    fasta::render(&recs)
}

/// Parses a frame file.
///
/// A record whose datalink header is unreadable comes back as `Err` in its
/// slot rather than failing the whole file, so a receiver can treat it as lost.
pub fn parse_frames(text: &str) -> Result<Vec<Result<Frame, Error>>, ParseError> {
    let recs = fasta::parse(text)?;
    let mut out = Vec::with_capacity(recs.len());
    for (i, r) in recs.iter().enumerate() {
        if indexed_header(&r.header, "frame").is_none() {
            return Err(header_error(text, i, "expected `>frame <i>`"));
        }
        out.push(Frame::from_sequence(&r.seq).map_err(Error::from));
    }
    Ok(out)
}

/// Renders a chain, one record per block.
pub fn render_chain(chain: &DnaChain) -> String {
    let recs: Vec<Record> =
        chain.blocks().iter().map(|b| Record::new(format!("block {}", b.index), b.to_sequence())).collect();
    fasta::render(&recs)
}

/// Parses a chain file. Difficulty is not stored in the file.
pub fn parse_chain(text: &str, difficulty: u8) -> Result<DnaChain, Error> {
    let recs = fasta::parse(text)?;
    let mut blocks = Vec::with_capacity(recs.len());
    for (i, r) in recs.iter().enumerate() {
        if indexed_header(&r.header, "block").is_none() {
            return Err(header_error(text, i, "expected `>block <index>`").into());
        }
        blocks.push(DnaBlock::from_sequence(&r.seq)?);
    }
    Ok(DnaChain::from_blocks(blocks, difficulty))
}

fn header_error(text: &str, record: usize, msg: &str) -> ParseError {
    let line = text.lines().enumerate().filter(|(_, l)| l.starts_with('>')).nth(record).map_or(1, |(n, _)| n + 1);
    ParseError::new(line, 1, msg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dnanet_core::ledger::extend;
    use dnanet_core::stack::{encode_message, StackConfig};

    #[test]
    fn frames_round_trip() {
        let cfg = StackConfig { max_segment_payload: 64, ..Default::default() };
        let frames = encode_message(b"frames on disk", &cfg).unwrap();
        let text = render_frames(&frames);
        assert!(text.starts_with(">frame 0\n"));
        let back: Vec<Frame> = parse_frames(&text).unwrap().into_iter().map(Result::unwrap).collect();
        assert_eq!(back, frames);
    }

    #[test]
    fn chain_round_trip() {
        let chain = extend(&DnaChain::genesis(1, b"g").unwrap(), b"next").unwrap();
        let text = render_chain(&chain);
        assert!(text.contains(">block 1\n"));
        assert_eq!(parse_chain(&text, 1).unwrap(), chain);
    }

    #[test]
    fn wrong_header_reports_its_line() {
        let e = parse_frames(">frame 0\nACGT\n>blk\nAC\n").unwrap_err();
        assert_eq!(e.line, 3);
    }
}
