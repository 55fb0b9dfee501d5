//! Cell networks joined by gap-junction links.
//!
//! A link is open while its phosphorylation level is at or above its
//! threshold. Nodes steer a message by phosphorylating exactly the
//! interfaces their routing table names for the destination, and every
//! transmission runs through a seeded substitution/insertion/deletion
//! noise model.

mod link;
mod noise;
mod route;
mod topology;

pub use link::{GapJunctionLink, LinkId, DEFAULT_THRESHOLD};
pub use noise::{stream_id, transmit, NoiseModel, Transmission};
pub use route::{route_and_deliver, route_with, Delivery, HopStats, RouteOptions, Switching};
pub use topology::{CellNode, Topology};

use crate::stack::{Address, StackError};

/// Errors from the channel model.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChannelError {
    /// Probability or level outside `[0, 1]`, or a threshold outside `(0, 1)`.
    #[error("RangeError: {what} = {value} out of range")]
    Range {
        /// Parameter name.
        what: &'static str,
        /// Rejected value.
        value: f64,
    },
    /// No routing entry for the destination.
    #[error("NoRouteError: node {node} has no route to {dst}")]
    NoRoute {
        /// Node doing the switching.
        node: Address,
        /// Requested destination.
        dst: Address,
    },
    /// Reference to a node that does not exist.
    #[error("UnknownNodeError: node {0} not in topology")]
    UnknownNode(Address),
    /// A node id declared twice.
    #[error("DuplicateNodeError: node {0} declared twice")]
    DuplicateNode(Address),
    /// Link that cannot exist (self-loop, broadcast endpoint).
    #[error("LinkError: {0}")]
    Link(&'static str),
    /// Route `via` a node that is not a neighbour.
    #[error("NoLinkError: no link between {0} and {1}")]
    NoLink(Address, Address),
    /// Frame rejected by the stack.
    #[error(transparent)]
    Stack(#[from] StackError),
}
