//! Substitution, adjunction and tree-local set attachment.

mod derivation;
mod derived;

use thiserror::Error;

use crate::address::GornAddress;
use crate::tree::NodeKind;

pub use derivation::{
    replay, replay_in_order, AttachmentEdge, ComponentAttachment, DerivationState, DerivationTree, Occurrence,
    Operation,
};
pub use derived::{adjoin, is_complete, substitute, Constituent, DerivedNode, DerivedTree, Origin};

/// Identifies one component-tree instance inside a derivation.
pub type OccurrenceId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("address {0} is out of range")]
    AddressOutOfRange(GornAddress),
    #[error("target {address} is a {kind} node, not a substitution slot")]
    NotASlot { address: GornAddress, kind: NodeKind },
    #[error("target {address} is a {kind} node; adjunction needs an internal node")]
    NotAdjoinable { address: GornAddress, kind: NodeKind },
    #[error("label mismatch: target is {expected}, tree root is {found}")]
    LabelMismatch { expected: String, found: String },
    #[error("substitution slot {address} of occurrence {occurrence} is already filled")]
    SlotAlreadyFilled { occurrence: OccurrenceId, address: GornAddress },
    #[error("auxiliary tree {0} cannot be substituted")]
    AuxiliaryForSubstitution(String),
    #[error("initial tree {0} cannot be adjoined")]
    InitialForAdjunction(String),
    #[error("node {0} forbids adjunction")]
    NullAdjunction(GornAddress),
    #[error("node {0} already has an adjunction")]
    DoubleAdjunction(GornAddress),
    #[error("components target different occurrences ({first} and {second})")]
    LocalityViolation { first: OccurrenceId, second: OccurrenceId },
    #[error("two components target the same address {0}")]
    DuplicateTarget(GornAddress),
    #[error("unknown set {0}")]
    UnknownSet(String),
    #[error("set {set} has components {expected:?}, edge lists {found:?}")]
    ComponentMismatch { set: String, expected: Vec<String>, found: Vec<String> },
    #[error("occurrence {0} does not exist")]
    UnknownOccurrence(OccurrenceId),
    #[error("occurrence id {0} is used twice")]
    DuplicateOccurrence(OccurrenceId),
    #[error("set {0} cannot root a derivation (needs a singleton initial tree rooted in the start symbol)")]
    BadRoot(String),
    #[error("edges of set(s) {0:?} hang from occurrences that never appear")]
    Dangling(Vec<String>),
    #[error("derivation leaves the tree incomplete (pending {0:?})")]
    Incomplete(Vec<GornAddress>),
}
