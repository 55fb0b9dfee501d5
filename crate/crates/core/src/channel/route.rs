//! Hop-by-hop forwarding.
//!
//! Each frame is flooded breadth-first from the source along the interfaces
//! the switching step selects. Every receiving node opens the frame (undoing
//! ECC), and if it has to forward it decrements the TTL, reseals the packet
//! and sends it on. A node handles a given frame at most once, so routing
//! loops terminate even before the TTL runs out.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use super::{stream_id, transmit, ChannelError, LinkId, NoiseModel, Topology, Transmission};
use crate::stack::{Address, Frame};

/// How interfaces are chosen at each node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Switching {
    /// Each forwarding node runs [`Topology::switch_links`] first.
    #[default]
    Circuit,
    /// Link states are left as configured; frames only cross links that
    /// are already open.
    Static,
}

/// Knobs for [`route_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RouteOptions {
    #[allow(missing_docs)]
    pub switching: Switching,
}

/// Per-hop counters. Hop `h` covers transmissions into nodes `h` links
/// away from the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HopStats {
    /// Hop depth, starting at 1.
    pub hop: u32,
    /// Transmissions attempted.
    pub sent: u64,
    /// Arrivals that differ from what was sent.
    pub corrupted: u64,
    /// Triples corrected by receivers' ECC.
    pub corrected: u64,
    /// Frames lost: closed link, unreadable at the receiver, or TTL expiry.
    pub dropped: u64,
}

/// Outcome of a routing run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Delivery {
    /// Frames received per delivering node, in arrival order.
    pub delivered: BTreeMap<Address, Vec<Frame>>,
    /// One entry per hop depth reached.
    pub hops: Vec<HopStats>,
}

impl Delivery {
    fn hop(&mut self, depth: u32) -> &mut HopStats {
        while self.hops.len() < depth as usize {
            let hop = self.hops.len() as u32 + 1;
            self.hops.push(HopStats { hop, ..HopStats::default() });
        }
        &mut self.hops[depth as usize - 1]
    }

    /// Sums all hop counters.
    pub fn totals(&self) -> HopStats {
        self.hops.iter().fold(HopStats::default(), |acc, h| HopStats {
            hop: acc.hop.max(h.hop),
            sent: acc.sent + h.sent,
            corrupted: acc.corrupted + h.corrupted,
            corrected: acc.corrected + h.corrected,
            dropped: acc.dropped + h.dropped,
        })
    }
}

/// [`route_with`] using circuit switching.
pub fn route_and_deliver(
    frames: &[Frame],
    src: Address,
    dst: Address,
    topo: &mut Topology,
    noise: &NoiseModel,
) -> Result<Delivery, ChannelError> {
    route_with(frames, src, dst, topo, noise, RouteOptions::default())
}

/// Forwards every frame from `src` towards `dst` (or everywhere for
/// broadcast) and records what each delivering node received.
///
/// Links are left in whatever state the last switching step put them in.
pub fn route_with(
    frames: &[Frame],
    src: Address,
    dst: Address,
    topo: &mut Topology,
    noise: &NoiseModel,
    opts: RouteOptions,
) -> Result<Delivery, ChannelError> {
    topo.node(src)?;
    let mut report = Delivery::default();
    if src == dst {
        report.delivered.insert(src, frames.to_vec());
        return Ok(report);
    }
    for (index, frame) in frames.iter().enumerate() {
        route_one(frame, index as u32, src, dst, topo, noise, opts, &mut report)?;
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn route_one(
    frame: &Frame,
    index: u32,
    src: Address,
    dst: Address,
    topo: &mut Topology,
    noise: &NoiseModel,
    opts: RouteOptions,
    report: &mut Delivery,
) -> Result<(), ChannelError> {
    let broadcast = dst.is_broadcast();
    let mut seen = BTreeSet::from([src]);
    let mut queue = VecDeque::from([(src, frame.clone(), 0u32)]);

    while let Some((node, received, depth)) = queue.pop_front() {
        let target = node != src && (broadcast || node == dst);
        if target {
            report.delivered.entry(node).or_default().push(received.clone());
        }

        let opened = received.open();
        if depth > 0 {
            match &opened {
                Ok((_, corrected)) => report.hop(depth).corrected += *corrected as u64,
                Err(_) if !target => report.hop(depth).dropped += 1,
                Err(_) => {}
            }
        }
        if node == dst {
            continue;
        }
        let Ok((mut packet, _)) = opened else { continue };

        if packet.ttl == 0 {
            report.hop(depth + 1).dropped += 1;
            continue;
        }
        packet.ttl -= 1;
        let wire = Frame::seal(&packet, received.ecc).to_sequence();

        let interfaces: BTreeSet<LinkId> = match opts.switching {
            Switching::Circuit => topo.switch_links(node, dst)?,
            Switching::Static => topo.node(node)?.interfaces_for(dst)?,
        };
        let hop = depth + 1;
        for link_id in interfaces {
            let link = topo.link(link_id);
            let Some(next) = link.other_end(node) else { continue };
            if seen.contains(&next) {
                continue;
            }
            report.hop(hop).sent += 1;
            match transmit(&wire, link, noise, stream_id(hop, index, link_id)) {
                Transmission::Dropped => report.hop(hop).dropped += 1,
                Transmission::Delivered(rx) => {
                    if rx != wire {
                        report.hop(hop).corrupted += 1;
                    }
                    match Frame::from_sequence(&rx) {
                        Ok(f) => {
                            seen.insert(next);
                            queue.push_back((next, f, hop));
                        }
                        Err(_) => report.hop(hop).dropped += 1,
                    }
                }
            }
        }
    }
    Ok(())
}
