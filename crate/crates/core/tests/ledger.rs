use dnanet_core::ledger::{extend, replicate, validate_chain, DnaChain, ReplicaSet};

#[test]
fn repeated_extension_stays_valid() {
    let mut chain = DnaChain::genesis(2, b"genesis").unwrap();
    for k in 1..=20u8 {
        chain = extend(&chain, &[k; 8]).unwrap();
        assert_eq!(validate_chain(&chain), Ok(()), "after {k} extensions");
    }
    assert_eq!(chain.len(), 21);
}

#[test]
fn zero_mutation_replication_preserves_serialization() {
    let mut chain = DnaChain::genesis(1, b"").unwrap();
    for k in 0..4u8 {
        chain = extend(&chain, &[k, k + 1, k + 2]).unwrap();
    }
    for seed in 0..10 {
        let copy = replicate(&chain, 0.0, seed).unwrap();
        let a: Vec<_> = chain.blocks().iter().map(|b| b.to_sequence()).collect();
        let b: Vec<_> = copy.blocks().iter().map(|b| b.to_sequence()).collect();
        assert_eq!(a, b);
    }
}

#[test]
fn resolution_is_idempotent_over_mutated_replicas() {
    let mut chain = DnaChain::genesis(2, b"").unwrap();
    for k in 0..3u8 {
        chain = extend(&chain, &[k; 4]).unwrap();
    }
    let mut set = ReplicaSet::new();
    for seed in 0..6u64 {
        set.insert(format!("node{seed}"), replicate(&chain, 0.002, seed).unwrap());
    }
    set.insert("fork", extend(&chain, b"longer").unwrap());
    let first = set.resolve_fork().unwrap();
    assert_eq!(first.len(), chain.len() + 1);
    let after_first = set.clone();
    assert_eq!(set.resolve_fork().unwrap(), first);
    assert_eq!(set, after_first);
    assert!(set.replicas.values().all(|c| *c == first));
}
