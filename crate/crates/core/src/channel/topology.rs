use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{ChannelError, GapJunctionLink, LinkId};
use crate::stack::Address;

/// A cell with its interfaces and static routing table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellNode {
    id: Address,
    interfaces: Vec<LinkId>,
    routing_table: BTreeMap<Address, BTreeSet<LinkId>>,
}

impl CellNode {
    #[allow(missing_docs)]
    pub fn id(&self) -> Address {
        self.id
    }

    /// Links attached to this node, in declaration order.
    pub fn interfaces(&self) -> &[LinkId] {
        &self.interfaces
    }

    /// Destination → outgoing interfaces.
    pub fn routing_table(&self) -> &BTreeMap<Address, BTreeSet<LinkId>> {
        &self.routing_table
    }

    /// Interfaces to use for `dst`: the routing entry, or every interface
    /// for broadcast.
    pub fn interfaces_for(&self, dst: Address) -> Result<BTreeSet<LinkId>, ChannelError> {
        if dst.is_broadcast() {
            return Ok(self.interfaces.iter().copied().collect());
        }
        self.routing_table.get(&dst).cloned().ok_or(ChannelError::NoRoute { node: self.id, dst })
    }
}

/// Nodes and the gap junctions between them.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Topology {
    nodes: BTreeMap<Address, CellNode>,
    links: Vec<GapJunctionLink>,
}

impl Topology {
    #[allow(missing_docs)]
    pub fn new() -> Self {
        Topology::default()
    }

    /// Declares a node. Broadcast is not a valid node id.
    pub fn add_node(&mut self, id: Address) -> Result<(), ChannelError> {
        if id.is_broadcast() {
            return Err(ChannelError::Link("broadcast address cannot name a node"));
        }
        if self.nodes.contains_key(&id) {
            return Err(ChannelError::DuplicateNode(id));
        }
        self.nodes.insert(id, CellNode { id, interfaces: Vec::new(), routing_table: BTreeMap::new() });
        Ok(())
    }

    /// Declares a bidirectional link between two existing nodes.
    pub fn add_link(&mut self, a: Address, b: Address, threshold: f64) -> Result<LinkId, ChannelError> {
        for n in [a, b] {
            if !self.nodes.contains_key(&n) {
                return Err(ChannelError::UnknownNode(n));
            }
        }
        let link = GapJunctionLink::new(a, b, threshold)?;
        let id = LinkId(self.links.len());
        self.links.push(link);
        for n in [a, b] {
            self.nodes.get_mut(&n).expect("checked above").interfaces.push(id);
        }
        Ok(id)
    }

    /// At node `at`, route traffic for `dst` over the link to neighbour `via`.
    pub fn add_route(&mut self, at: Address, dst: Address, via: Address) -> Result<(), ChannelError> {
        let link = self.link_between(at, via)?;
        self.nodes
            .get_mut(&at)
            .expect("link_between checks the node")
            .routing_table
            .entry(dst)
            .or_default()
            .insert(link);
        Ok(())
    }

    /// First declared link joining `a` and `b`.
    pub fn link_between(&self, a: Address, b: Address) -> Result<LinkId, ChannelError> {
        let node = self.node(a)?;
        node.interfaces
            .iter()
            .copied()
            .find(|&l| self.links[l.0].other_end(a) == Some(b))
            .ok_or(ChannelError::NoLink(a, b))
    }

    #[allow(missing_docs)]
    pub fn node(&self, id: Address) -> Result<&CellNode, ChannelError> {
        self.nodes.get(&id).ok_or(ChannelError::UnknownNode(id))
    }

    #[allow(missing_docs)]
    pub fn nodes(&self) -> impl Iterator<Item = &CellNode> {
        self.nodes.values()
    }

    #[allow(missing_docs)]
    pub fn link(&self, id: LinkId) -> &GapJunctionLink {
        &self.links[id.0]
    }

    #[allow(missing_docs)]
    pub fn links(&self) -> &[GapJunctionLink] {
        &self.links
    }

    /// Sets one link's phosphorylation level.
    pub fn set_phosphorylation(&mut self, link: LinkId, level: f64) -> Result<(), ChannelError> {
        self.links[link.0].set_phosphorylation(level)
    }

    /// Sets every link to `level`.
    pub fn set_all_phosphorylation(&mut self, level: f64) -> Result<(), ChannelError> {
        self.links.iter_mut().try_for_each(|l| l.set_phosphorylation(level))
    }

    /// The node's switching circuit: phosphorylates the interfaces routed
    /// towards `dst` (all of them for broadcast) to 1.0 and every other
    /// interface of the node to 0.0. Returns the opened set.
    pub fn switch_links(&mut self, node: Address, dst: Address) -> Result<BTreeSet<LinkId>, ChannelError> {
        let n = self.node(node)?;
        let open = n.interfaces_for(dst)?;
        let interfaces = n.interfaces.clone();
        for l in interfaces {
            let level = if open.contains(&l) { 1.0 } else { 0.0 };
            self.links[l.0].set_phosphorylation(level)?;
        }
        Ok(open)
    }
}
