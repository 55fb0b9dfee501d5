#![no_std]
#![warn(missing_docs)]

//! Nucleotide-level networking and ledger primitives.
//!
//! Every piece of data handled by this crate is a [`NucleotideSequence`]:
//! application payloads, layer headers, frames on a gap-junction link and
//! the blocks of a [`ledger::DnaChain`]. The crate is split into
//!
//! - the nucleotide primitives ([`nucleotide`], [`codon`], [`enzyme`],
//!   [`stuffing`]): the byte codec, codon translation, ligation,
//!   restriction-site search and cutting, and guard stuffing;
//! - [`stack`]: the layered encode/decode pipeline that turns a byte payload
//!   into datalink frames and back;
//! - [`channel`]: cell topologies joined by gap-junction links whose
//!   permeability is gated by phosphorylation, plus a seeded noise model;
//! - [`ledger`]: a nucleotide-encoded blockchain with quaternary
//!   proof-of-work, mutating replication and longest-valid-chain resolution.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! anything touching a clock live in the companion `dnanet` crate.
//!
//! ```
//! use dnanet_core::{pack_bytes, unpack_bytes, NucleotideSequence};
//!
//! let seq = pack_bytes(&[0x1B]);
//! assert_eq!(seq.to_string(), "ACGT");
//! assert_eq!(unpack_bytes(&seq).unwrap(), vec![0x1B]);
//! let parsed: NucleotideSequence = "ACGT".parse().unwrap();
//! assert_eq!(parsed, seq);
//! ```

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod channel;
pub mod codon;
pub mod enzyme;
pub mod ledger;
pub mod nucleotide;
pub mod stack;
pub mod stuffing;

pub use crate::codon::{translate, AminoSymbol, Codon, CodonTable};
pub use crate::enzyme::{cut, find_sites, EnzymeSpec};
pub use crate::nucleotide::{ligate, pack_bytes, unpack_bytes, Nucleotide, NucleotideSequence, SequenceError};
pub use crate::stuffing::{destuff, stuff};
