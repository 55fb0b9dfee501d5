//! Network packets and datalink frames.

use alloc::format;

use super::ecc::{decode_triples, ecc_encode, EccMode, TripleVote};
use super::segment::checksum8;
use super::{push_tag, Address, LayerTag, Reader, StackError};
use crate::nucleotide::{Nucleotide, NucleotideSequence};

/// `CC | ecc_mode(2) | frame_checksum(4)`.
pub const DATALINK_HEADER_LEN: usize = 2 + 2 + 4;
/// `CA | dst(8) | src(8) | ttl(4)`.
pub const NETWORK_HEADER_LEN: usize = 2 + 8 + 8 + 4;

/// Network header plus the transport PDU it carries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NetworkPacket {
    /// Destination address.
    pub dst: Address,
    /// Source address.
    pub src: Address,
    /// Remaining hops.
    pub ttl: u8,
    /// Serialized transport segment.
    pub transport: NucleotideSequence,
}

impl NetworkPacket {
    /// Wire form.
    pub fn to_sequence(&self) -> NucleotideSequence {
        let mut s = NucleotideSequence::with_capacity(NETWORK_HEADER_LEN + self.transport.len());
        push_tag(&mut s, LayerTag::Network);
        s.push_uint(u64::from(self.dst.0), 8);
        s.push_uint(u64::from(self.src.0), 8);
        s.push_uint(u64::from(self.ttl), 4);
        s.extend_from(&self.transport);
        s
    }

    /// Parses the network header; the transport PDU is taken verbatim.
    pub fn parse(seq: &[Nucleotide]) -> Result<Self, StackError> {
        let mut r = Reader::new(seq);
        r.tag(LayerTag::Network)?;
        let dst = Address(r.uint(8, "dst")? as u16);
        let src = Address(r.uint(8, "src")? as u16);
        let ttl = r.uint(4, "ttl")? as u8;
        Ok(NetworkPacket { dst, src, ttl, transport: r.rest().into() })
    }
}

/// A datalink frame as it travels over a gap junction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    /// Redundancy applied to `body`.
    pub ecc: EccMode,
    /// [`checksum8`] of the network packet before ECC.
    pub frame_checksum: u8,
    /// ECC-expanded network packet.
    pub body: NucleotideSequence,
}

impl Frame {
    /// Frames a network packet.
    pub fn seal(packet: &NetworkPacket, ecc: EccMode) -> Frame {
        let raw = packet.to_sequence();
        Frame { ecc, frame_checksum: checksum8(&raw), body: ecc_encode(&raw, ecc) }
    }

    /// Undoes ECC, checks the frame checksum and parses the network packet.
    /// Also returns how many triples needed correction.
    pub fn open(&self) -> Result<(NetworkPacket, usize), StackError> {
        let (raw, corrected) = match self.ecc {
            EccMode::None => (self.body.clone(), 0),
            EccMode::Triple => {
                let votes = decode_triples(&self.body)?;
                let mut raw = NucleotideSequence::with_capacity(votes.len());
                let mut corrected = 0;
                for (triple, v) in votes.into_iter().enumerate() {
                    if matches!(v, TripleVote::Corrected(_)) {
                        corrected += 1;
                    }
                    raw.push(v.base().ok_or(StackError::Uncorrectable { triple })?);
                }
                (raw, corrected)
            }
        };
        let found = checksum8(&raw);
        if found != self.frame_checksum {
            return Err(StackError::Checksum { layer: "datalink", expected: self.frame_checksum, found });
        }
        Ok((NetworkPacket::parse(&raw)?, corrected))
    }

    /// Wire form: datalink header then body.
    pub fn to_sequence(&self) -> NucleotideSequence {
        let mut s = NucleotideSequence::with_capacity(DATALINK_HEADER_LEN + self.body.len());
        push_tag(&mut s, LayerTag::Datalink);
        s.push_uint(self.ecc.code(), 2);
        s.push_uint(u64::from(self.frame_checksum), 4);
        s.extend_from(&self.body);
        s
    }

    /// Parses the datalink header. Body integrity is checked by [`Frame::open`].
    pub fn from_sequence(seq: &[Nucleotide]) -> Result<Frame, StackError> {
        let mut r = Reader::new(seq);
        r.tag(LayerTag::Datalink)?;
        let code = r.uint(2, "ecc mode")?;
        let ecc = EccMode::from_code(code).ok_or_else(|| StackError::Header(format!("unknown ecc mode {code}")))?;
        let frame_checksum = r.uint(4, "frame checksum")? as u8;
        Ok(Frame { ecc, frame_checksum, body: r.rest().into() })
    }
}
