use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::frame::{Frame, NetworkPacket};
use super::segment::Segment;
use super::{strip_upper_headers, upper_headers, PresentationMode, StackConfig, StackError};
use crate::codon::{translate, CodonTable};
use crate::enzyme::cut;
use crate::nucleotide::{pack_bytes, unpack_bytes, NucleotideSequence};
use crate::stuffing::{destuff, stuff};

/// Runs `payload` down the stack and returns one frame per segment, in
/// segment order.
///
/// The packed payload is wrapped in the application, presentation and
/// session headers, and the whole upper PDU is stuffed against the
/// enzyme's guard. The stuffed strand is then split into chunks of at most
/// `max_segment_payload` nt by ligating a recognition site between
/// consecutive chunks and cutting with the enzyme.
pub fn encode_message(payload: &[u8], cfg: &StackConfig) -> Result<Vec<Frame>, StackError> {
    cfg.validate()?;
    if payload.is_empty() {
        return Err(StackError::EmptyPayload);
    }
    let mut upper = upper_headers(cfg);
    upper.extend_from(&pack_bytes(payload));
    let stuffed = stuff(&upper, cfg.enzyme.guard())?;

    let chunks = segment_by_enzyme(&stuffed, cfg)?;
    let total = u16::try_from(chunks.len())
        .map_err(|_| StackError::Config(format!("{} segments exceed 16-bit seg_total", chunks.len())))?;

    chunks
        .into_iter()
        .enumerate()
        .map(|(i, chunk)| {
            let seg = Segment::new(i as u16, total, chunk)?;
            let packet =
                NetworkPacket { dst: cfg.dst_addr, src: cfg.src_addr, ttl: cfg.ttl, transport: seg.to_sequence() };
            Ok(Frame::seal(&packet, cfg.ecc))
        })
        .collect()
}

fn segment_by_enzyme(stuffed: &[crate::Nucleotide], cfg: &StackConfig) -> Result<Vec<NucleotideSequence>, StackError> {
    let site = cfg.enzyme.site();
    let offset = cfg.enzyme.cut_offset();
    let n = stuffed.len().div_ceil(cfg.max_segment_payload).max(1);

    let mut strand = NucleotideSequence::with_capacity(stuffed.len() + n * site.len());
    for (i, chunk) in stuffed.chunks(cfg.max_segment_payload).enumerate() {
        if i > 0 {
            strand.extend_from(site);
        }
        strand.extend_from(chunk);
    }

    let fragments = cut(&strand, &cfg.enzyme);
    if fragments.len() != n {
        return Err(StackError::Header(format!("segmentation produced {} fragments for {n} chunks", fragments.len())));
    }
    // Fragment i carries the tail of site i-1 and the head of site i.
    let head = site.len() - offset;
    Ok(fragments
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            let start = if i == 0 { 0 } else { head };
            let end = if i + 1 == n { f.len() } else { f.len() - offset };
            NucleotideSequence::from(&f[start..end])
        })
        .collect())
}

/// Codon rendering of the packed payload, produced only in
/// [`PresentationMode::CodonView`]. Trailing bases that do not fill a codon
/// are dropped. The view is lossy and never reaches the wire.
pub fn codon_view(payload: &[u8], cfg: &StackConfig) -> Option<String> {
    if cfg.presentation != PresentationMode::CodonView {
        return None;
    }
    let packed = pack_bytes(payload);
    let whole = packed.len() - packed.len() % 3;
    Some(translate(&packed[..whole], &CodonTable::standard()).expect("whole codons"))
}

/// Per-message reassembly buffer owned by one receiver.
#[derive(Debug, Clone)]
pub struct Reassembler {
    cfg: StackConfig,
    total: Option<u16>,
    segments: BTreeMap<u16, Segment>,
    corrected: usize,
}

impl Reassembler {
    /// Receiver bound to `cfg.dst_addr`.
    pub fn new(cfg: StackConfig) -> Self {
        Reassembler { cfg, total: None, segments: BTreeMap::new(), corrected: 0 }
    }

    /// Triples corrected so far across accepted frames.
    pub fn corrected(&self) -> usize {
        self.corrected
    }

    /// Validates one frame down to the transport layer and buffers its segment.
    /// Identical duplicates are absorbed.
    pub fn push(&mut self, frame: &Frame) -> Result<(), StackError> {
        let (packet, corrected) = frame.open()?;
        let local = self.cfg.dst_addr;
        if packet.dst != local && !packet.dst.is_broadcast() {
            return Err(StackError::Address { dst: packet.dst, local });
        }
        let seg = Segment::parse(&packet.transport)?;
        let h = seg.header;
        match self.total {
            Some(t) if t != h.seg_total => {
                return Err(StackError::Header(format!("seg_total {} disagrees with earlier {t}", h.seg_total)))
            }
            _ => self.total = Some(h.seg_total),
        }
        if let Some(prev) = self.segments.get(&h.seg_index) {
            if *prev != seg {
                return Err(StackError::Header(format!("conflicting duplicate of segment {}", h.seg_index)));
            }
            return Ok(());
        }
        self.corrected += corrected;
        self.segments.insert(h.seg_index, seg);
        Ok(())
    }

    /// Joins the segments, destuffs, strips upper headers and unpacks.
    pub fn finish(self) -> Result<Vec<u8>, StackError> {
        let total = self.total.ok_or(StackError::MissingSegment { index: 0, total: 0 })?;
        if let Some(index) = (0..total).find(|i| !self.segments.contains_key(i)) {
            return Err(StackError::MissingSegment { index, total });
        }
        let mut stuffed = NucleotideSequence::new();
        for seg in self.segments.values() {
            stuffed.extend_from(&seg.payload);
        }
        let upper = destuff(&stuffed, self.cfg.enzyme.guard())?;
        let packed = strip_upper_headers(&upper, &self.cfg)?;
        Ok(unpack_bytes(packed)?)
    }
}

/// Inverse of [`encode_message`]. Frame order does not matter.
pub fn decode_message(frames: &[Frame], cfg: &StackConfig) -> Result<Vec<u8>, StackError> {
    let mut r = Reassembler::new(cfg.clone());
    for f in frames {
        r.push(f)?;
    }
    r.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enzyme::find_sites;
    use crate::stack::Address;
    use crate::stack::{ecc_decode, EccMode};
    use crate::Nucleotide;
    use alloc::vec;

    fn segment_payloads(frames: &[Frame]) -> Vec<Segment> {
        frames.iter().map(|f| Segment::parse(&f.open().unwrap().0.transport).unwrap()).collect()
    }

    #[test]
    fn one_byte_single_frame() {
        let cfg = StackConfig::default();
        let frames = encode_message(&[0x00], &cfg).unwrap();
        assert_eq!(frames.len(), 1);
        assert_eq!(decode_message(&frames, &cfg).unwrap(), vec![0x00]);
    }

    #[test]
    fn six_hundred_nt_makes_two_segments() {
        let cfg = StackConfig::default();
        // 142 bytes of 0x00 pack to 568 nt; with the 32 nt of upper headers
        // (which contain no guard for these ids) the stuffed PDU is 600 nt.
        let payload = vec![0u8; 142];
        let frames = encode_message(&payload, &cfg).unwrap();
        let segs = segment_payloads(&frames);
        assert_eq!(segs.iter().map(|s| s.payload.len()).sum::<usize>(), 600);
        assert_eq!(frames.len(), 2);
        for (i, s) in segs.iter().enumerate() {
            assert_eq!(s.header.seg_total, 2);
            assert_eq!(s.header.seg_index as usize, i);
        }
        assert_eq!(segs[0].payload.len(), 512);
        assert_eq!(decode_message(&frames, &cfg).unwrap(), payload);
    }

    #[test]
    fn site_in_payload_is_stuffed_away() {
        let cfg = StackConfig::default();
        let mut payload = Vec::new();
        let site: NucleotideSequence = "GAATTCAA".parse().unwrap();
        payload.extend(crate::unpack_bytes(&site).unwrap());
        payload.extend_from_slice(&[0x8F, 0x7D, 0x8F, 0x7D]);
        assert!(!find_sites(&pack_bytes(&payload), &cfg.enzyme).is_empty());
        let frames = encode_message(&payload, &cfg).unwrap();
        for s in segment_payloads(&frames) {
            assert!(find_sites(&s.payload, &cfg.enzyme).is_empty());
        }
        assert_eq!(decode_message(&frames, &cfg).unwrap(), payload);
    }

    #[test]
    fn missing_segment() {
        let cfg = StackConfig::default();
        let frames = encode_message(&[7u8; 200], &cfg).unwrap();
        assert_eq!(frames.len(), 2);
        assert_eq!(decode_message(&frames[..1], &cfg), Err(StackError::MissingSegment { index: 1, total: 2 }));
        assert_eq!(decode_message(&[], &cfg), Err(StackError::MissingSegment { index: 0, total: 0 }));
    }

    #[test]
    fn single_substitution_in_triple_body_is_corrected() {
        let cfg = StackConfig::default();
        let mut frames = encode_message(b"hello", &cfg).unwrap();
        let b = frames[0].body[40];
        frames[0].body[40] = Nucleotide::from_value(b.value() + 1);
        assert_eq!(decode_message(&frames, &cfg).unwrap(), b"hello");
    }

    #[test]
    fn address_and_header_errors() {
        let cfg = StackConfig::default();
        let frames = encode_message(b"x", &cfg).unwrap();
        let other = StackConfig { dst_addr: Address(9), ..cfg.clone() };
        assert!(matches!(decode_message(&frames, &other), Err(StackError::Address { .. })));
        let wrong_session = StackConfig { session_id: 99, ..cfg.clone() };
        assert!(matches!(decode_message(&frames, &wrong_session), Err(StackError::Header(_))));
        let wrong_app = StackConfig { app_id: 99, ..cfg.clone() };
        assert!(matches!(decode_message(&frames, &wrong_app), Err(StackError::Header(_))));
    }

    #[test]
    fn broadcast_is_accepted_anywhere() {
        let tx = StackConfig { dst_addr: Address::BROADCAST, ..Default::default() };
        let frames = encode_message(b"all", &tx).unwrap();
        let rx = StackConfig { dst_addr: Address(77), ..tx.clone() };
        assert_eq!(decode_message(&frames, &rx).unwrap(), b"all");
    }

    #[test]
    fn duplicates_absorbed_and_order_irrelevant() {
        let cfg = StackConfig { max_segment_payload: 64, ..Default::default() };
        let payload: Vec<u8> = (0..=255).collect();
        let mut frames = encode_message(&payload, &cfg).unwrap();
        frames.reverse();
        frames.push(frames[0].clone());
        assert_eq!(decode_message(&frames, &cfg).unwrap(), payload);
    }

    #[test]
    fn empty_payload_and_bad_config() {
        assert_eq!(encode_message(&[], &StackConfig::default()), Err(StackError::EmptyPayload));
        let cfg = StackConfig { max_segment_payload: 10, ..Default::default() };
        assert!(matches!(encode_message(&[1], &cfg), Err(StackError::Config(_))));
    }

    #[test]
    fn uncorrectable_and_truncated_bodies() {
        let cfg = StackConfig::default();
        let frames = encode_message(b"z", &cfg).unwrap();
        let mut f = frames.clone();
        f[0].body[0] = Nucleotide::A;
        f[0].body[1] = Nucleotide::G;
        f[0].body[2] = Nucleotide::T;
        assert_eq!(decode_message(&f, &cfg), Err(StackError::Uncorrectable { triple: 0 }));
        let mut f = frames;
        f[0].body.pop();
        assert!(matches!(decode_message(&f, &cfg), Err(StackError::Sequence(_))));
    }

    #[test]
    fn ecc_none_round_trip() {
        let cfg = StackConfig { ecc: EccMode::None, ..Default::default() };
        let frames = encode_message(b"plain", &cfg).unwrap();
        assert_eq!(ecc_decode(&frames[0].body, EccMode::None).unwrap(), frames[0].body);
        assert_eq!(decode_message(&frames, &cfg).unwrap(), b"plain");
    }

    #[test]
    fn codon_view_only_in_that_mode() {
        let raw = StackConfig::default();
        assert_eq!(codon_view(&[0x1B], &raw), None);
        let view = StackConfig { presentation: PresentationMode::CodonView, ..raw.clone() };
        // 0x1B -> ACGT -> ACG -> T (Thr)
        assert_eq!(codon_view(&[0x1B], &view).as_deref(), Some("T"));
        let a = encode_message(b"abc", &raw).unwrap();
        let b = encode_message(b"abc", &view).unwrap();
        assert_eq!(decode_message(&b, &view).unwrap(), b"abc");
        // Only the presentation mode field differs on the wire.
        assert_eq!(a.len(), b.len());
    }
}
