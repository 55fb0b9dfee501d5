use dnanet_core::stack::{
    checksum8, decode_message, encode_message, EccMode, Frame, LayerTag, Segment, StackConfig, DATALINK_HEADER_LEN,
    NETWORK_HEADER_LEN, TRANSPORT_HEADER_LEN,
};
use dnanet_core::{find_sites, Nucleotide};
use proptest::prelude::*;

fn small_segments() -> StackConfig {
    StackConfig { max_segment_payload: 64, ..Default::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip(payload in prop::collection::vec(any::<u8>(), 1..600), ecc in prop_oneof![Just(EccMode::None), Just(EccMode::Triple)]) {
        let cfg = StackConfig { ecc, ..small_segments() };
        let frames = encode_message(&payload, &cfg).unwrap();
        prop_assert_eq!(decode_message(&frames, &cfg).unwrap(), payload);
    }

    #[test]
    fn reassembly_ignores_order(payload in prop::collection::vec(any::<u8>(), 1..300), seed in any::<u64>()) {
        let cfg = small_segments();
        let mut frames = encode_message(&payload, &cfg).unwrap();
        // Fisher-Yates driven by a tiny LCG so the permutation follows the seed.
        let mut s = seed | 1;
        for i in (1..frames.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            frames.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(decode_message(&frames, &cfg).unwrap(), payload);
    }

    #[test]
    fn segment_payloads_never_hold_the_site(payload in prop::collection::vec(prop_oneof![Just(0x83u8), Just(0xD0u8), Just(0x8Fu8), any::<u8>()], 1..400)) {
        let cfg = small_segments();
        for f in encode_message(&payload, &cfg).unwrap() {
            let seg = Segment::parse(&f.open().unwrap().0.transport).unwrap();
            prop_assert!(find_sites(&seg.payload, &cfg.enzyme).is_empty());
        }
    }

    #[test]
    fn checksum_sees_every_single_substitution(bases in prop::collection::vec(0u8..4, 1..200), pos in any::<prop::sample::Index>(), shift in 1u8..4) {
        let seq: Vec<Nucleotide> = bases.into_iter().map(Nucleotide::from_value).collect();
        let mut bad = seq.clone();
        let i = pos.index(bad.len());
        bad[i] = Nucleotide::from_value(bad[i].value() + shift);
        prop_assert_ne!(checksum8(&seq), checksum8(&bad));
    }
}

#[test]
fn header_order_on_the_wire() {
    let cfg = StackConfig { ecc: EccMode::None, ..Default::default() };
    let frame = &encode_message(b"order", &cfg).unwrap()[0];
    let wire = frame.to_sequence();
    let tag_at = |at: usize| [wire[at], wire[at + 1]];
    let mut at = 0;
    assert_eq!(tag_at(at), LayerTag::Datalink.code());
    at += DATALINK_HEADER_LEN;
    assert_eq!(tag_at(at), LayerTag::Network.code());
    at += NETWORK_HEADER_LEN;
    assert_eq!(tag_at(at), LayerTag::Transport.code());
    at += TRANSPORT_HEADER_LEN;
    assert_eq!(tag_at(at), LayerTag::Session.code());
    at += 2 + 16;
    assert_eq!(tag_at(at), LayerTag::Presentation.code());
    at += 2 + 2;
    assert_eq!(tag_at(at), LayerTag::Application.code());
}

#[test]
fn every_single_substitution_is_corrected() {
    let cfg = StackConfig::default();
    for len in [1usize, 7, 16] {
        let payload: Vec<u8> = (0..len as u8).map(|b| b.wrapping_mul(37)).collect();
        let frames = encode_message(&payload, &cfg).unwrap();
        for fi in 0..frames.len() {
            for pos in 0..frames[fi].body.len() {
                for shift in 1..4 {
                    let mut bad: Vec<Frame> = frames.clone();
                    let b = &mut bad[fi].body[pos];
                    *b = Nucleotide::from_value(b.value() + shift);
                    assert_eq!(decode_message(&bad, &cfg).unwrap(), payload, "frame {fi} pos {pos}");
                }
            }
        }
    }
}
