//! Layered encode/decode pipeline.
//!
//! Wire layout, outermost first (integers are MSB-first base 4):
//!
//! ```text
//! datalink:     CC | ecc_mode(2) | frame_checksum(4) | body
//! network:      CA | dst(8) | src(8) | ttl(4)
//! transport:    AT | seg_index(8) | seg_total(8) | payload_len(8) | checksum(4)
//! session:      AG | session_id(16)
//! presentation: AC | mode(2)
//! application:  AA | app_id(8)
//! ```
//!
//! The datalink body is the network packet after ECC. The session,
//! presentation and application headers travel inside the segmented
//! transport payload, in that order, ahead of the packed user bytes.

use alloc::format;
use alloc::string::String;

use crate::enzyme::{failure_table, EnzymeSpec};
use crate::nucleotide::{read_uint, Nucleotide, NucleotideSequence, SequenceError};
use crate::stuffing::{check_border_free, STUFF_BASE};

mod codec;
mod ecc;
mod frame;
mod segment;

pub use codec::{codon_view, decode_message, encode_message, Reassembler};
pub use ecc::{decode_triples, ecc_decode, ecc_encode, majority, EccMode, TripleVote};
pub use frame::{Frame, NetworkPacket, DATALINK_HEADER_LEN, NETWORK_HEADER_LEN};
pub use segment::{
    checksum8, cut_segment, protect, unprotect, Segment, TransportHeader, PROTECTOR_TAG, TRANSPORT_HEADER_LEN,
};

/// Default hop limit written into the network header.
pub const DEFAULT_TTL: u8 = 16;

/// Errors raised while building or taking apart frames.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StackError {
    /// Malformed [`StackConfig`].
    #[error("ConfigError: {0}")]
    Config(String),
    /// `encode_message` needs at least one byte.
    #[error("ConfigError: payload must be non-empty")]
    EmptyPayload,
    /// Checksum mismatch after ECC: uncorrectable corruption.
    #[error("ChecksumError: {layer} checksum expected {expected} found {found}")]
    Checksum {
        /// `datalink` or `transport`.
        layer: &'static str,
        /// Value carried in the header.
        expected: u8,
        /// Value recomputed from the received material.
        found: u8,
    },
    /// A segment never arrived.
    #[error("MissingSegmentError: segment {index} of {total} missing")]
    MissingSegment {
        /// First absent index.
        index: u16,
        /// Announced total.
        total: u16,
    },
    /// Layer tag or field mismatch.
    #[error("HeaderError: {0}")]
    Header(String),
    /// Frame addressed to another node.
    #[error("AddressError: frame for {dst} received at {local}")]
    Address {
        /// Destination in the network header.
        dst: Address,
        /// This node.
        local: Address,
    },
    /// A triple whose three bases all differ.
    #[error("UncorrectableError: triple {triple} has three distinct bases")]
    Uncorrectable {
        /// Index of the triple in the ECC body.
        triple: usize,
    },
    /// Protect/unprotect applied in the wrong state.
    #[error("StateError: segment is already {0}")]
    State(&'static str),
    /// Length, parse or stuffing errors from the nucleotide primitives.
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// Two-nucleotide layer tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayerTag {
    /// `AA`
    Application,
    /// `AC`
    Presentation,
    /// `AG`
    Session,
    /// `AT`
    Transport,
    /// `CA`
    Network,
    /// `CC`
    Datalink,
}

impl LayerTag {
    /// All six tags, application first.
    pub const ALL: [LayerTag; 6] = [
        LayerTag::Application,
        LayerTag::Presentation,
        LayerTag::Session,
        LayerTag::Transport,
        LayerTag::Network,
        LayerTag::Datalink,
    ];

    /// Nucleotide code.
    pub const fn code(self) -> [Nucleotide; 2] {
        use Nucleotide::*;
        match self {
            LayerTag::Application => [A, A],
            LayerTag::Presentation => [A, C],
            LayerTag::Session => [A, G],
            LayerTag::Transport => [A, T],
            LayerTag::Network => [C, A],
            LayerTag::Datalink => [C, C],
        }
    }

    /// Lowercase layer name.
    pub const fn name(self) -> &'static str {
        match self {
            LayerTag::Application => "application",
            LayerTag::Presentation => "presentation",
            LayerTag::Session => "session",
            LayerTag::Transport => "transport",
            LayerTag::Network => "network",
            LayerTag::Datalink => "datalink",
        }
    }
}

/// 16-bit node address, 8 nt on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address(pub u16);

impl Address {
    /// `TTTTTTTT`.
    pub const BROADCAST: Address = Address(0xFFFF);

    /// Whether this is the broadcast address.
    pub const fn is_broadcast(self) -> bool {
        self.0 == 0xFFFF
    }
}

impl core::fmt::Display for Address {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:04x}", self.0)
    }
}

/// Presentation-layer mode. `CodonView` only adds an inspection rendering;
/// the wire bytes are identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PresentationMode {
    /// `AA`
    #[default]
    Raw,
    /// `AC`
    CodonView,
}

impl PresentationMode {
    fn code(self) -> u64 {
        match self {
            PresentationMode::Raw => 0,
            PresentationMode::CodonView => 1,
        }
    }

    fn from_code(v: u64) -> Option<Self> {
        match v {
            0 => Some(PresentationMode::Raw),
            1 => Some(PresentationMode::CodonView),
            _ => None,
        }
    }
}

/// Parameters shared by sender and receiver. The receiver treats
/// `dst_addr` as its own address.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackConfig {
    /// Application identifier (application header).
    pub app_id: u16,
    /// Session identifier (session header).
    pub session_id: u32,
    /// Sender address.
    pub src_addr: Address,
    /// Destination address; may be broadcast.
    pub dst_addr: Address,
    /// Enzyme used for segmentation; its guard drives stuffing.
    pub enzyme: EnzymeSpec,
    /// Largest segment payload in nt.
    pub max_segment_payload: usize,
    /// Redundancy applied to each network packet.
    pub ecc: EccMode,
    /// Presentation mode.
    pub presentation: PresentationMode,
    /// Initial hop limit.
    pub ttl: u8,
}

impl Default for StackConfig {
    fn default() -> Self {
        StackConfig {
            app_id: 1,
            session_id: 1,
            src_addr: Address(1),
            dst_addr: Address(2),
            enzyme: EnzymeSpec::default(),
            max_segment_payload: 512,
            ecc: EccMode::Triple,
            presentation: PresentationMode::Raw,
            ttl: DEFAULT_TTL,
        }
    }
}

impl StackConfig {
    /// Smallest allowed `max_segment_payload`.
    pub const MIN_SEGMENT_PAYLOAD: usize = 64;

    /// Checks every config invariant.
    pub fn validate(&self) -> Result<(), StackError> {
        let m = self.max_segment_payload;
        if m < Self::MIN_SEGMENT_PAYLOAD || m % 4 != 0 {
            return Err(StackError::Config(format!("max_segment_payload {m} must be >= 64 and divisible by 4")));
        }
        if m > usize::from(u16::MAX) {
            return Err(StackError::Config(format!(
                "max_segment_payload {m} does not fit the 16-bit payload_len field"
            )));
        }
        if self.src_addr.is_broadcast() {
            return Err(StackError::Config("source address cannot be broadcast".into()));
        }
        let site = self.enzyme.site();
        // Segmentation relies on the site never straddling a chunk boundary
        // and on the stuffed base differing from the site's last base.
        if failure_table(site).last().is_some_and(|&b| b > 0) {
            return Err(StackError::Config(format!("recognition site {site} has a border")));
        }
        check_border_free(self.enzyme.guard()).map_err(|e| StackError::Config(format!("{e}")))?;
        if site.last() == Some(&STUFF_BASE) {
            return Err(StackError::Config(format!("recognition site {site} ends in the stuffing base")));
        }
        Ok(())
    }
}

/// Sequential field reader over a received strand.
pub(crate) struct Reader<'a> {
    seq: &'a [Nucleotide],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub(crate) fn new(seq: &'a [Nucleotide]) -> Self {
        Reader { seq, pos: 0 }
    }

    pub(crate) fn take(&mut self, n: usize, what: &str) -> Result<&'a [Nucleotide], StackError> {
        if self.seq.len() - self.pos < n {
            return Err(StackError::Header(format!(
                "truncated {what}: need {n} nt at offset {}, have {}",
                self.pos,
                self.seq.len() - self.pos
            )));
        }
        let s = &self.seq[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    pub(crate) fn uint(&mut self, width: usize, what: &str) -> Result<u64, StackError> {
        self.take(width, what).map(read_uint)
    }

    pub(crate) fn tag(&mut self, tag: LayerTag) -> Result<(), StackError> {
        let got = self.take(2, tag.name())?;
        if got != tag.code() {
            return Err(StackError::Header(format!(
                "expected {} tag {}{} found {}{}",
                tag.name(),
                tag.code()[0],
                tag.code()[1],
                got[0],
                got[1]
            )));
        }
        Ok(())
    }

    pub(crate) fn rest(&mut self) -> &'a [Nucleotide] {
        let s = &self.seq[self.pos..];
        self.pos = self.seq.len();
        s
    }
}

pub(crate) fn push_tag(seq: &mut NucleotideSequence, tag: LayerTag) {
    seq.extend_from(&tag.code());
}

/// Session, presentation and application headers, outermost first.
pub(crate) fn upper_headers(cfg: &StackConfig) -> NucleotideSequence {
    let mut h = NucleotideSequence::with_capacity(32);
    push_tag(&mut h, LayerTag::Session);
    h.push_uint(u64::from(cfg.session_id), 16);
    push_tag(&mut h, LayerTag::Presentation);
    h.push_uint(cfg.presentation.code(), 2);
    push_tag(&mut h, LayerTag::Application);
    h.push_uint(u64::from(cfg.app_id), 8);
    h
}

/// Strips and checks the upper headers, returning the packed payload.
pub(crate) fn strip_upper_headers<'a>(
    pdu: &'a [Nucleotide],
    cfg: &StackConfig,
) -> Result<&'a [Nucleotide], StackError> {
    let mut r = Reader::new(pdu);
    r.tag(LayerTag::Session)?;
    let session = r.uint(16, "session id")?;
    if session != u64::from(cfg.session_id) {
        return Err(StackError::Header(format!("session id {session:#x} does not match {:#x}", cfg.session_id)));
    }
    r.tag(LayerTag::Presentation)?;
    let mode = r.uint(2, "presentation mode")?;
    PresentationMode::from_code(mode).ok_or_else(|| StackError::Header(format!("unknown presentation mode {mode}")))?;
    r.tag(LayerTag::Application)?;
    let app = r.uint(8, "application id")?;
    if app != u64::from(cfg.app_id) {
        return Err(StackError::Header(format!("application id {app:#x} does not match {:#x}", cfg.app_id)));
    }
    Ok(r.rest())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn layer_tags_distinct() {
        for (i, a) in LayerTag::ALL.iter().enumerate() {
            for b in &LayerTag::ALL[i + 1..] {
                assert_ne!(a.code(), b.code());
            }
        }
    }

    #[test]
    fn broadcast_renders_as_all_t() {
        let mut s = NucleotideSequence::new();
        s.push_uint(u64::from(Address::BROADCAST.0), 8);
        assert_eq!(s.to_string(), "TTTTTTTT");
    }

    #[test]
    fn config_validation() {
        assert!(StackConfig::default().validate().is_ok());
        for bad in [60, 66, 70_000] {
            let cfg = StackConfig { max_segment_payload: bad, ..Default::default() };
            assert!(matches!(cfg.validate(), Err(StackError::Config(_))), "{bad}");
        }
        let cfg = StackConfig { src_addr: Address::BROADCAST, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = StackConfig { enzyme: EnzymeSpec::new("GATCAG".parse().unwrap(), 1).unwrap(), ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = StackConfig { enzyme: EnzymeSpec::new("GTTCA".parse().unwrap(), 1).unwrap(), ..Default::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn upper_header_layout() {
        let cfg = StackConfig { session_id: 0, app_id: 0, ..Default::default() };
        let h = upper_headers(&cfg);
        assert_eq!(h.len(), 2 + 16 + 2 + 2 + 2 + 8);
        assert_eq!(h.to_string(), "AGAAAAAAAAAAAAAAAAACAAAAAAAAAAAA");
        assert!(strip_upper_headers(&h, &cfg).unwrap().is_empty());
    }
}
