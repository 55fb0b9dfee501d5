//! Transport segments, their checksum and protector-strand guarding.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{push_tag, LayerTag, Reader, StackError};
use crate::enzyme::{cut, EnzymeSpec};
use crate::nucleotide::{Nucleotide, NucleotideSequence};

/// `AT | seg_index(8) | seg_total(8) | payload_len(8) | checksum(4)`.
pub const TRANSPORT_HEADER_LEN: usize = 2 + 8 + 8 + 8 + 4;

/// Tag a protector strand prepends to a guarded segment.
pub const PROTECTOR_TAG: [Nucleotide; 4] = [Nucleotide::T, Nucleotide::G, Nucleotide::T, Nucleotide::G];

/// Additive checksum: sum of base values mod 256.
pub fn checksum8(seq: &[Nucleotide]) -> u8 {
    seq.iter().fold(0u8, |acc, n| acc.wrapping_add(n.value()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[allow(missing_docs)]
pub struct TransportHeader {
    pub seg_index: u16,
    pub seg_total: u16,
    pub payload_len: u16,
    pub checksum: u8,
}

/// One transport segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    /// Transport header fields.
    pub header: TransportHeader,
    /// Chunk of the stuffed upper-layer PDU.
    pub payload: NucleotideSequence,
    /// Whether a protector strand currently shields this segment.
    pub protected: bool,
}

impl Segment {
    /// Builds an unprotected segment, filling length and checksum.
    pub fn new(seg_index: u16, seg_total: u16, payload: NucleotideSequence) -> Result<Self, StackError> {
        if seg_total == 0 || seg_index >= seg_total {
            return Err(StackError::Header(format!("segment index {seg_index} outside total {seg_total}")));
        }
        let payload_len = u16::try_from(payload.len())
            .map_err(|_| StackError::Header(format!("segment payload of {} nt exceeds 16 bits", payload.len())))?;
        Ok(Segment {
            header: TransportHeader { seg_index, seg_total, payload_len, checksum: checksum8(&payload) },
            payload,
            protected: false,
        })
    }

    /// Serialized transport PDU; prefixed with [`PROTECTOR_TAG`] while protected.
    pub fn to_sequence(&self) -> NucleotideSequence {
        let mut s = NucleotideSequence::with_capacity(4 + TRANSPORT_HEADER_LEN + self.payload.len());
        if self.protected {
            s.extend_from(&PROTECTOR_TAG);
        }
        push_tag(&mut s, LayerTag::Transport);
        s.push_uint(u64::from(self.header.seg_index), 8);
        s.push_uint(u64::from(self.header.seg_total), 8);
        s.push_uint(u64::from(self.header.payload_len), 8);
        s.push_uint(u64::from(self.header.checksum), 4);
        s.extend_from(&self.payload);
        s
    }

    /// Parses an unprotected transport PDU, checking length and checksum.
    pub fn parse(seq: &[Nucleotide]) -> Result<Self, StackError> {
        let mut r = Reader::new(seq);
        r.tag(LayerTag::Transport)?;
        let seg_index = r.uint(8, "seg_index")? as u16;
        let seg_total = r.uint(8, "seg_total")? as u16;
        let payload_len = r.uint(8, "payload_len")? as u16;
        let checksum = r.uint(4, "segment checksum")? as u8;
        let payload = r.rest();
        if payload.len() != usize::from(payload_len) {
            return Err(StackError::Header(format!(
                "segment payload_len {payload_len} but {} nt present",
                payload.len()
            )));
        }
        if seg_total == 0 || seg_index >= seg_total {
            return Err(StackError::Header(format!("segment index {seg_index} outside total {seg_total}")));
        }
        let found = checksum8(payload);
        if found != checksum {
            return Err(StackError::Checksum { layer: "transport", expected: checksum, found });
        }
        Ok(Segment {
            header: TransportHeader { seg_index, seg_total, payload_len, checksum },
            payload: payload.into(),
            protected: false,
        })
    }
}

/// Attaches a protector strand.
pub fn protect(seg: Segment) -> Result<Segment, StackError> {
    if seg.protected {
        return Err(StackError::State("protected"));
    }
    Ok(Segment { protected: true, ..seg })
}

/// Removes the protector strand.
pub fn unprotect(seg: Segment) -> Result<Segment, StackError> {
    if !seg.protected {
        return Err(StackError::State("unprotected"));
    }
    Ok(Segment { protected: false, ..seg })
}

/// Applies `enzyme` to a segment's serialized form the way the stack does:
/// protected segments come back whole.
pub fn cut_segment(seg: &Segment, enzyme: &EnzymeSpec) -> Vec<NucleotideSequence> {
    let material = seg.to_sequence();
    if seg.protected {
        vec![material]
    } else {
        cut(&material, enzyme)
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
    fn checksum_examples() {
        assert_eq!(checksum8(&[]), 0);
        assert_eq!(checksum8(&seq("TTTT")), 12);
        assert_eq!(checksum8(&seq("ACGT")), 6);
        assert_eq!(checksum8(&NucleotideSequence::repeat(Nucleotide::T, 100)), 44);
    }

    #[test]
    fn protect_round_trip() {
        let seg = Segment::new(0, 1, seq("ACGTACGT")).unwrap();
        let p = protect(seg.clone()).unwrap();
        assert!(p.protected);
        assert!(p.to_sequence().to_string().starts_with("TGTGAT"));
        assert_eq!(unprotect(p).unwrap(), seg);
    }

    #[test]
    fn state_errors() {
        let seg = Segment::new(0, 1, seq("ACGT")).unwrap();
        assert_eq!(unprotect(seg.clone()), Err(StackError::State("unprotected")));
        let p = protect(seg).unwrap();
        assert_eq!(protect(p), Err(StackError::State("protected")));
    }

    #[test]
    fn protected_segment_is_not_cut() {
        let seg = Segment::new(0, 1, seq("AAGAATTCAAGAATTC")).unwrap();
        let enzyme = EnzymeSpec::default();
        assert_eq!(cut_segment(&seg, &enzyme).len(), 3);
        let p = protect(seg).unwrap();
        let frags = cut_segment(&p, &enzyme);
        assert_eq!(frags.len(), 1);
        assert_eq!(frags[0], p.to_sequence());
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let seg = Segment::new(2, 5, seq("GGGTTTAC")).unwrap();
        let wire = seg.to_sequence();
        assert_eq!(wire.len(), TRANSPORT_HEADER_LEN + 8);
        assert_eq!(Segment::parse(&wire).unwrap(), seg);

        let mut bad = wire.clone();
        let last = bad.len() - 1;
        bad[last] = Nucleotide::A;
        assert!(matches!(Segment::parse(&bad), Err(StackError::Checksum { layer: "transport", .. })));

        bad = wire.clone();
        bad.pop();
        assert!(matches!(Segment::parse(&bad), Err(StackError::Header(_))));

        assert!(Segment::new(5, 5, seq("A")).is_err());
        assert!(Segment::new(0, 0, seq("A")).is_err());
    }
}
