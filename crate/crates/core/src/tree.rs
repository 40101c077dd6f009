//! Node heads, elementary trees, and the addressing and yield utilities
//! shared by elementary and derived trees.

use std::fmt;

use thiserror::Error;

use crate::address::GornAddress;
use crate::symbol::{Label, Token};

/// Adjunction constraint on an internal node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Constraint {
    #[default]
    Allowed,
    /// `@na`: no adjunction.
    Null,
    /// `@oa`: adjunction required before the tree is complete.
    Obligatory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Internal,
    SubstitutionSlot,
    Foot,
    TerminalLeaf,
    EpsilonLeaf,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeKind::Internal => "internal",
            NodeKind::SubstitutionSlot => "substitution-slot",
            NodeKind::Foot => "foot",
            NodeKind::TerminalLeaf => "terminal-leaf",
            NodeKind::EpsilonLeaf => "epsilon-leaf",
        })
    }
}

/// Everything about a node except its children.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Head {
    Internal(Label, Constraint),
    Slot(Label),
    Foot(Label),
    Leaf(Token),
    Epsilon,
}

impl Head {
    pub fn kind(&self) -> NodeKind {
        match self {
            Head::Internal(..) => NodeKind::Internal,
            Head::Slot(_) => NodeKind::SubstitutionSlot,
            Head::Foot(_) => NodeKind::Foot,
            Head::Leaf(_) => NodeKind::TerminalLeaf,
            Head::Epsilon => NodeKind::EpsilonLeaf,
        }
    }

    /// Category label; `None` for terminal and epsilon leaves.
    pub fn label(&self) -> Option<&Label> {
        match self {
            Head::Internal(l, _) | Head::Slot(l) | Head::Foot(l) => Some(l),
            Head::Leaf(_) | Head::Epsilon => None,
        }
    }

    pub fn constraint(&self) -> Constraint {
        match self {
            Head::Internal(_, c) => *c,
            _ => Constraint::Allowed,
        }
    }
}

/// Read access to a node of any tree flavour.
pub trait TreeNode: Sized {
    fn head(&self) -> &Head;
    fn children(&self) -> &[Self];

    fn kind(&self) -> NodeKind {
        self.head().kind()
    }
}

/// Anything with a root node.
pub trait Tree {
    type Node: TreeNode;
    fn root_node(&self) -> &Self::Node;
}

/// A node of an elementary tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub head: Head,
    pub children: Vec<Node>,
}

impl Node {
    pub fn internal(label: Label, constraint: Constraint, children: Vec<Node>) -> Self {
        Node { head: Head::Internal(label, constraint), children }
    }

    pub fn leaf(head: Head) -> Self {
        Node { head, children: Vec::new() }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Node::node_count).sum::<usize>()
    }
}

impl TreeNode for Node {
    fn head(&self) -> &Head {
        &self.head
    }
    fn children(&self) -> &[Node] {
        &self.children
    }
}

impl Tree for Node {
    type Node = Node;
    fn root_node(&self) -> &Node {
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeClass {
    Initial,
    Auxiliary,
}

impl fmt::Display for TreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeClass::Initial => "initial",
            TreeClass::Auxiliary => "auxiliary",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementaryTree {
    pub name: String,
    pub class: TreeClass,
    pub root: Node,
}

impl ElementaryTree {
    pub fn root_label(&self) -> Option<&Label> {
        self.root.head.label()
    }

    /// Address of the foot node, if there is exactly one.
    pub fn foot_address(&self) -> Option<GornAddress> {
        let feet: Vec<_> = addresses_of(self).into_iter().filter(|(_, k)| *k == NodeKind::Foot).collect();
        match feet.as_slice() {
            [(a, _)] => Some(a.clone()),
            _ => None,
        }
    }

    pub fn terminals(&self) -> Vec<Token> {
        yield_of(self)
    }
}

impl Tree for ElementaryTree {
    type Node = Node;
    fn root_node(&self) -> &Node {
        &self.root
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("address {0} is out of range")]
pub struct AddressOutOfRange(pub GornAddress);

/// Returns the node at `address`; the root for the empty address.
pub fn node_at<'a, T: Tree>(tree: &'a T, address: &GornAddress) -> Result<&'a T::Node, AddressOutOfRange> {
    let mut node = tree.root_node();
    for &i in address.indices() {
        node = node.children().get(i as usize - 1).ok_or_else(|| AddressOutOfRange(address.clone()))?;
    }
    Ok(node)
}

/// Preorder list of every node's address and kind.
pub fn addresses_of<T: Tree>(tree: &T) -> Vec<(GornAddress, NodeKind)> {
    fn walk<N: TreeNode>(n: &N, at: GornAddress, out: &mut Vec<(GornAddress, NodeKind)>) {
        out.push((at.clone(), n.kind()));
        for (i, c) in n.children().iter().enumerate() {
            walk(c, at.child(i as u32 + 1), out);
        }
    }
    let mut out = Vec::new();
    walk(tree.root_node(), GornAddress::root(), &mut out);
    out
}

/// Left-to-right terminal tokens. Slots, feet and epsilon leaves contribute
/// nothing.
pub fn yield_of<T: Tree>(tree: &T) -> Vec<Token> {
    fn walk<N: TreeNode>(n: &N, out: &mut Vec<Token>) {
        if let Head::Leaf(t) = n.head() {
            out.push(t.clone());
        }
        for c in n.children() {
            walk(c, out);
        }
    }
    let mut out = Vec::new();
    walk(tree.root_node(), &mut out);
    out
}

/// Writes a node in the grammar file's s-expression syntax.
pub(crate) fn write_sexpr<N: TreeNode>(n: &N, out: &mut String) {
    match n.head() {
        Head::Internal(label, c) => {
            out.push('(');
            out.push_str(label.as_str());
            match c {
                Constraint::Allowed => {}
                Constraint::Null => out.push_str("@na"),
                Constraint::Obligatory => out.push_str("@oa"),
            }
            for child in n.children() {
                out.push(' ');
                write_sexpr(child, out);
            }
            out.push(')');
        }
        Head::Slot(l) => {
            out.push('(');
            out.push_str(l.as_str());
            out.push_str("!)");
        }
        Head::Foot(l) => {
            out.push_str(l.as_str());
            out.push('*');
        }
        Head::Leaf(t) => {
            out.push('\'');
            out.push_str(t.as_str());
        }
        Head::Epsilon => out.push_str("eps"),
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_sexpr(self, &mut s);
        f.write_str(&s)
    }
}
