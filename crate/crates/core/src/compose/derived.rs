use std::fmt;

use crate::address::GornAddress;
use crate::symbol::{Label, Token};
use crate::tree::{node_at, write_sexpr, Constraint, ElementaryTree, Head, Node, NodeKind, Tree, TreeClass, TreeNode};

use super::{ComposeError, OccurrenceId};

/// Which elementary node a derived node was copied from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Origin {
    pub occurrence: OccurrenceId,
    pub address: GornAddress,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DerivedNode {
    pub head: Head,
    pub origin: Origin,
    /// Set once an auxiliary tree has been adjoined at this node.
    pub adjoined: bool,
    pub children: Vec<DerivedNode>,
}

impl TreeNode for DerivedNode {
    fn head(&self) -> &Head {
        &self.head
    }
    fn children(&self) -> &[DerivedNode] {
        &self.children
    }
}

fn instantiate(node: &Node, occurrence: OccurrenceId, at: GornAddress) -> DerivedNode {
    let children =
        node.children.iter().enumerate().map(|(i, c)| instantiate(c, occurrence, at.child(i as u32 + 1))).collect();
    DerivedNode { head: node.head.clone(), origin: Origin { occurrence, address: at }, adjoined: false, children }
}

/// A phrase-structure tree built by composition. Every node records the
/// occurrence that contributed it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DerivedTree {
    pub root: DerivedNode,
}

impl Tree for DerivedTree {
    type Node = DerivedNode;
    fn root_node(&self) -> &DerivedNode {
        &self.root
    }
}

/// A labelled node together with the token span it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constituent {
    pub address: GornAddress,
    pub label: Label,
    pub start: usize,
    pub end: usize,
}

impl DerivedTree {
    pub fn from_elementary(tree: &ElementaryTree, occurrence: OccurrenceId) -> Self {
        DerivedTree { root: instantiate(&tree.root, occurrence, GornAddress::root()) }
    }

    fn node_mut(&mut self, address: &GornAddress) -> Option<&mut DerivedNode> {
        let mut n = &mut self.root;
        for &i in address.indices() {
            n = n.children.get_mut(i as usize - 1)?;
        }
        Some(n)
    }

    /// Unfilled substitution slots and obligatory-adjunction nodes that have
    /// not been adjoined at, in preorder.
    pub fn pending(&self) -> Vec<GornAddress> {
        let mut out = Vec::new();
        self.walk(|a, n| {
            let open = match n.head {
                Head::Slot(_) => true,
                Head::Internal(_, Constraint::Obligatory) => !n.adjoined,
                _ => false,
            };
            if open {
                out.push(a.clone());
            }
        });
        out
    }

    pub fn has_foot(&self) -> bool {
        let mut found = false;
        self.walk(|_, n| found |= n.head.kind() == NodeKind::Foot);
        found
    }

    pub fn is_complete(&self) -> bool {
        self.pending().is_empty() && !self.has_foot()
    }

    /// Current address of the node copied from `origin`, if it is still in the tree.
    pub fn find_origin(&self, origin: &Origin) -> Option<GornAddress> {
        let mut found = None;
        self.walk(|a, n| {
            if found.is_none() && &n.origin == origin {
                found = Some(a.clone());
            }
        });
        found
    }

    /// Preorder visit of every node with its address.
    pub fn walk<F: FnMut(&GornAddress, &DerivedNode)>(&self, mut f: F) {
        fn go<F: FnMut(&GornAddress, &DerivedNode)>(n: &DerivedNode, a: GornAddress, f: &mut F) {
            f(&a, n);
            for (i, c) in n.children.iter().enumerate() {
                go(c, a.child(i as u32 + 1), f);
            }
        }
        go(&self.root, GornAddress::root(), &mut f);
    }

    /// Every internal node with the half-open token span `[start, end)` it dominates.
    pub fn constituents(&self) -> Vec<Constituent> {
        fn go(n: &DerivedNode, a: GornAddress, pos: &mut usize, out: &mut Vec<Constituent>) {
            let start = *pos;
            if let Head::Leaf(_) = n.head {
                *pos += 1;
            }
            let slot = out.len();
            if let Head::Internal(label, _) = &n.head {
                out.push(Constituent { address: a.clone(), label: label.clone(), start, end: start });
            }
            for (i, c) in n.children.iter().enumerate() {
                go(c, a.child(i as u32 + 1), pos, out);
            }
            if let Head::Internal(..) = n.head {
                out[slot].end = *pos;
            }
        }
        let mut out = Vec::new();
        go(&self.root, GornAddress::root(), &mut 0, &mut out);
        out
    }

    /// Does some node labelled `label` dominate exactly tokens `[start, end)`?
    pub fn has_constituent(&self, label: &str, start: usize, end: usize) -> bool {
        self.constituents().iter().any(|c| c.label.as_str() == label && c.start == start && c.end == end)
    }

    pub fn tokens(&self) -> Vec<Token> {
        crate::tree::yield_of(self)
    }
}

impl fmt::Display for DerivedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_sexpr(&self.root, &mut s);
        f.write_str(&s)
    }
}

fn labels_match(expected: Option<&Label>, found: Option<&Label>) -> Result<(), ComposeError> {
    if expected == found {
        Ok(())
    } else {
        Err(ComposeError::LabelMismatch {
            expected: expected.map(|l| l.to_string()).unwrap_or_default(),
            found: found.map(|l| l.to_string()).unwrap_or_default(),
        })
    }
}

/// Replaces the substitution slot at `at` with a fresh copy of `tree`.
pub fn substitute(
    host: &DerivedTree,
    at: &GornAddress,
    tree: &ElementaryTree,
    occurrence: OccurrenceId,
) -> Result<DerivedTree, ComposeError> {
    let target = node_at(host, at).map_err(|e| ComposeError::AddressOutOfRange(e.0))?;
    if tree.class != TreeClass::Initial {
        return Err(ComposeError::AuxiliaryForSubstitution(tree.name.clone()));
    }
    let Head::Slot(slot_label) = &target.head else {
        return Err(ComposeError::NotASlot { address: at.clone(), kind: target.head.kind() });
    };
    labels_match(Some(slot_label), tree.root_label())?;
    let mut out = host.clone();
    *out.node_mut(at).expect("address checked") = instantiate(&tree.root, occurrence, GornAddress::root());
    Ok(out)
}

/// Splices `aux` in at `at`: the subtree there moves under the foot of the copy.
pub fn adjoin(
    host: &DerivedTree,
    at: &GornAddress,
    aux: &ElementaryTree,
    occurrence: OccurrenceId,
) -> Result<DerivedTree, ComposeError> {
    let target = node_at(host, at).map_err(|e| ComposeError::AddressOutOfRange(e.0))?;
    if aux.class != TreeClass::Auxiliary {
        return Err(ComposeError::InitialForAdjunction(aux.name.clone()));
    }
    let Head::Internal(label, constraint) = &target.head else {
        return Err(ComposeError::NotAdjoinable { address: at.clone(), kind: target.head.kind() });
    };
    if *constraint == Constraint::Null {
        return Err(ComposeError::NullAdjunction(at.clone()));
    }
    if target.adjoined {
        return Err(ComposeError::DoubleAdjunction(at.clone()));
    }
    labels_match(Some(label), aux.root_label())?;
    let foot = aux.foot_address().ok_or_else(|| ComposeError::InitialForAdjunction(aux.name.clone()))?;

    let mut excised = target.clone();
    excised.adjoined = true;
    let mut planted = DerivedTree { root: instantiate(&aux.root, occurrence, GornAddress::root()) };
    *planted.node_mut(&foot).expect("foot address") = excised;

    let mut out = host.clone();
    *out.node_mut(at).expect("address checked") = planted.root;
    Ok(out)
}

pub fn is_complete(t: &DerivedTree) -> bool {
    t.is_complete()
}
