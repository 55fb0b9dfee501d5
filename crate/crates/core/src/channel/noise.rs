use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ChannelError, GapJunctionLink, LinkId};
use crate::nucleotide::{Nucleotide, NucleotideSequence};

/// Per-nucleotide error probabilities plus the seed of every derived stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    p_sub: f64,
    p_ins: f64,
    p_del: f64,
    seed: u64,
}

impl NoiseModel {
    /// Each probability in `[0, 1]` and their sum at most 1.
    pub fn new(p_sub: f64, p_ins: f64, p_del: f64, seed: u64) -> Result<Self, ChannelError> {
        for (what, p) in [("p_sub", p_sub), ("p_ins", p_ins), ("p_del", p_del)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(ChannelError::Range { what, value: p });
            }
        }
        let total = p_sub + p_ins + p_del;
        if total > 1.0 {
            return Err(ChannelError::Range { what: "p_sub + p_ins + p_del", value: total });
        }
        Ok(NoiseModel { p_sub, p_ins, p_del, seed })
    }

    /// No corruption at all.
    pub fn noiseless(seed: u64) -> Self {
        NoiseModel { p_sub: 0.0, p_ins: 0.0, p_del: 0.0, seed }
    }

    #[allow(missing_docs)]
    pub fn p_sub(&self) -> f64 {
        self.p_sub
    }
    #[allow(missing_docs)]
    pub fn p_ins(&self) -> f64 {
        self.p_ins
    }
    #[allow(missing_docs)]
    pub fn p_del(&self) -> f64 {
        self.p_del
    }
    #[allow(missing_docs)]
    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn is_noiseless(&self) -> bool {
        self.p_sub == 0.0 && self.p_ins == 0.0 && self.p_del == 0.0
    }

    /// Independent ChaCha stream for `(seed, stream_id)`.
    pub fn stream(&self, stream_id: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream_id);
        rng
    }

    /// Applies the noise model to `seq` using stream `stream_id`.
    ///
    /// One uniform draw per input base decides, in order: delete, else
    /// substitute with one of the three other bases, else keep and maybe
    /// insert a uniform base after it.
    pub fn corrupt(&self, seq: &[Nucleotide], stream_id: u64) -> NucleotideSequence {
        if self.is_noiseless() {
            return seq.into();
        }
        let mut rng = self.stream(stream_id);
        let del = self.p_del;
        let sub = del + self.p_sub;
        let ins = sub + self.p_ins;
        let mut out = NucleotideSequence::with_capacity(seq.len() + seq.len() / 16);
        for &n in seq {
            let u: f64 = rng.random();
            if u < del {
                continue;
            }
            if u < sub {
                let shift: u8 = rng.random_range(1..=3);
                out.push(Nucleotide::from_value(n.value() + shift));
            } else if u < ins {
                out.push(n);
                out.push(Nucleotide::from_value(rng.random_range(0..4)));
            } else {
                out.push(n);
            }
        }
        out
    }
}

/// Result of sending a strand over a link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transmission {
    /// What arrived at the far end, possibly corrupted.
    Delivered(NucleotideSequence),
    /// Link was closed.
    Dropped,
}

/// Sends `seq` over `link`: closed links drop, open links apply `noise`.
pub fn transmit(seq: &[Nucleotide], link: &GapJunctionLink, noise: &NoiseModel, stream_id: u64) -> Transmission {
    if !link.is_open() {
        return Transmission::Dropped;
    }
    Transmission::Delivered(noise.corrupt(seq, stream_id))
}

const fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream id of one transmission, keyed by hop depth, frame index and link.
/// Stable across platforms and runs.
pub fn stream_id(hop: u32, frame: u32, link: LinkId) -> u64 {
    let h = splitmix64(u64::from(hop));
    let h = splitmix64(h ^ u64::from(frame));
    splitmix64(h ^ link.0 as u64)
}
