use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::block::DnaBlock;
use super::chain::{confirmed_prefix, validate_chain, DnaChain, CONFIRMATION_DEPTH};
use super::LedgerError;
use crate::nucleotide::Nucleotide;

/// Copies `chain` nucleotide by nucleotide, substituting each base with
/// probability `p_mut` (uniformly among the three others).
pub fn replicate(chain: &DnaChain, p_mut: f64, seed: u64) -> Result<DnaChain, LedgerError> {
    if !(0.0..=1.0).contains(&p_mut) {
        return Err(LedgerError::Range(p_mut));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = chain
        .blocks()
        .iter()
        .map(|b| {
            let mut s = b.to_sequence();
            if p_mut > 0.0 {
                for n in s.iter_mut() {
                    if rng.random::<f64>() < p_mut {
                        let shift: u8 = rng.random_range(1..=3);
                        *n = Nucleotide::from_value(n.value() + shift);
                    }
                }
            }
            DnaBlock::from_sequence(&s).expect("substitution preserves block length")
        })
        .collect();
    Ok(DnaChain::from_blocks(blocks, chain.difficulty()))
}

/// Chains held by each node, keyed by node name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReplicaSet {
    /// Node name → chain.
    pub replicas: BTreeMap<String, DnaChain>,
}

impl ReplicaSet {
    #[allow(missing_docs)]
    pub fn new() -> Self {
        ReplicaSet::default()
    }

    /// Adds or replaces one node's chain.
    pub fn insert(&mut self, node: impl Into<String>, chain: DnaChain) {
        self.replicas.insert(node.into(), chain);
    }

    /// [`Self::resolve_fork_at_depth`] with the six-block confirmation depth.
    pub fn resolve_fork(&mut self) -> Result<DnaChain, LedgerError> {
        self.resolve_fork_at_depth(CONFIRMATION_DEPTH)
    }

    /// Picks the longest valid replica, breaking ties by the smallest tip
    /// digest, and copies it over every replica.
    ///
    /// Fails without touching any replica if the winner disagrees with the
    /// confirmed prefix of some valid replica.
    pub fn resolve_fork_at_depth(&mut self, depth: usize) -> Result<DnaChain, LedgerError> {
        let valid: Vec<(&String, &DnaChain)> =
            self.replicas.iter().filter(|(_, c)| validate_chain(c).is_ok()).collect();
        let winner = valid
            .iter()
            .map(|(_, c)| *c)
            .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| tip_digest(b).cmp(&tip_digest(a))))
            .ok_or(LedgerError::NoValidChain)?
            .clone();

        for (name, chain) in &valid {
            let confirmed = confirmed_prefix(chain, depth);
            if let Some(block) = confirmed.iter().zip(winner.blocks()).position(|(mine, theirs)| mine != theirs) {
                return Err(LedgerError::ConfirmationConflict { replica: (*name).clone(), block });
            }
        }

        for chain in self.replicas.values_mut() {
            chain.clone_from(&winner);
        }
        Ok(winner)
    }
}

fn tip_digest(c: &DnaChain) -> super::Digest {
    c.tip().expect("valid chains are non-empty").digest()
}

/// Free-function form of [`ReplicaSet::resolve_fork`].
pub fn resolve_fork(replicas: &mut ReplicaSet) -> Result<DnaChain, LedgerError> {
    replicas.resolve_fork()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ledger::extend;

    fn grow(c: &DnaChain, n: usize, tag: u8) -> DnaChain {
        let mut c = c.clone();
        for i in 0..n {
            c = extend(&c, &[tag, i as u8]).unwrap();
        }
        c
    }

    fn genesis() -> DnaChain {
        DnaChain::genesis(1, b"").unwrap()
    }

    #[test]
    fn replicate_without_mutation_is_identity() {
        let c = grow(&genesis(), 2, 1);
        let r = replicate(&c, 0.0, 7).unwrap();
        assert_eq!(r, c);
        assert_eq!(validate_chain(&r), Ok(()));
    }

    #[test]
    fn replicate_with_certain_mutation() {
        let c = grow(&genesis(), 2, 1);
        let r = replicate(&c, 1.0, 7).unwrap();
        for (a, b) in c.blocks().iter().zip(r.blocks()) {
            let (sa, sb) = (a.to_sequence(), b.to_sequence());
            assert!(sa.iter().zip(sb.iter()).all(|(x, y)| x != y));
        }
        assert!(validate_chain(&r).is_err());
        assert!(replicate(&c, 1.5, 0).is_err());
    }

    #[test]
    fn only_survivor_wins() {
        let short = grow(&genesis(), 1, 1);
        let long = grow(&genesis(), 4, 2);
        let mut set = ReplicaSet::new();
        set.insert("a", short.clone());
        set.insert("b", replicate(&long, 1.0, 3).unwrap());
        assert_eq!(set.resolve_fork().unwrap(), short);
        assert!(set.replicas.values().all(|c| *c == short));
    }

    #[test]
    fn longest_wins() {
        let mut set = ReplicaSet::new();
        set.insert("three", grow(&genesis(), 2, 1));
        set.insert("five", grow(&genesis(), 4, 2));
        assert_eq!(set.resolve_fork().unwrap().len(), 5);
    }

    #[test]
    fn tie_goes_to_smaller_tip_digest() {
        let a = grow(&genesis(), 2, 1);
        let b = grow(&genesis(), 2, 2);
        let expected = if tip_digest(&a) < tip_digest(&b) { a.clone() } else { b.clone() };
        let mut set = ReplicaSet::new();
        set.insert("x", a);
        set.insert("y", b);
        assert_eq!(set.resolve_fork().unwrap(), expected);
        // Idempotent.
        let snapshot = set.clone();
        assert_eq!(set.resolve_fork().unwrap(), expected);
        assert_eq!(set, snapshot);
    }

    #[test]
    fn no_valid_chain() {
        let mut set = ReplicaSet::new();
        set.insert("bad", DnaChain::from_blocks(alloc::vec![], 1));
        assert_eq!(set.resolve_fork(), Err(LedgerError::NoValidChain));
    }

    #[test]
    fn confirmed_prefix_cannot_be_rewritten() {
        let g = genesis();
        let honest = grow(&g, 7, 1); // 8 blocks: 0 and 1 confirmed
        let rogue = grow(&g, 8, 2); // 9 blocks diverging at height 1
        let mut set = ReplicaSet::new();
        set.insert("honest", honest.clone());
        set.insert("rogue", rogue);
        let before = set.clone();
        assert_eq!(set.resolve_fork(), Err(LedgerError::ConfirmationConflict { replica: "honest".into(), block: 1 }));
        assert_eq!(set, before);
        // Same fork resolved above the confirmation depth is fine.
        let mut shallow = before.clone();
        assert!(shallow.resolve_fork_at_depth(20).is_ok());
    }
}
