//! Elementary sets, grammars and well-formedness checking.

use std::collections::HashSet;
use std::fmt;

use crate::address::GornAddress;
use crate::symbol::{check_symbol, Label, Token};
use crate::tree::{addresses_of, node_at, yield_of, ElementaryTree, NodeKind, TreeClass, TreeNode};

/// Trees that compose simultaneously in one derivation step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementarySet {
    pub name: String,
    pub components: Vec<ElementaryTree>,
    pub anchor: Option<Token>,
}

impl ElementarySet {
    pub fn singleton(tree: ElementaryTree) -> Self {
        ElementarySet { name: tree.name.clone(), components: vec![tree], anchor: None }
    }

    pub fn is_singleton(&self) -> bool {
        self.components.len() == 1
    }

    pub fn component(&self, name: &str) -> Option<(usize, &ElementaryTree)> {
        self.components.iter().enumerate().find(|(_, c)| c.name == name)
    }

    pub fn terminals(&self) -> Vec<Token> {
        self.components.iter().flat_map(yield_of).collect()
    }

    /// Substitution slots across all components.
    pub fn slot_count(&self) -> usize {
        self.components
            .iter()
            .map(|c| addresses_of(c).iter().filter(|(_, k)| *k == NodeKind::SubstitutionSlot).count())
            .sum()
    }

    /// The declared anchor, or else the set's only terminal if it has exactly one.
    pub fn lexical_anchor(&self) -> Option<Token> {
        if let Some(a) = &self.anchor {
            return Some(a.clone());
        }
        match self.terminals().as_slice() {
            [t] => Some(t.clone()),
            _ => None,
        }
    }
}

/// How derivation size relates to yield length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeBound {
    /// Every set has a terminal: at most `n` sets for `n` tokens.
    Lexical,
    /// Every set has a terminal or at least two substitution slots. Terminal-free
    /// sets then branch in the derivation tree, so at most `2n - 1` sets.
    Branching,
    /// No bound follows from the grammar's shape.
    Unbounded,
}

impl SizeBound {
    /// Largest derivation (in set occurrences) that can yield `n` tokens.
    pub fn max_sets(self, n: usize) -> Option<usize> {
        match self {
            SizeBound::Lexical => Some(n),
            SizeBound::Branching => Some((2 * n).saturating_sub(1)),
            SizeBound::Unbounded => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grammar {
    pub name: String,
    pub start: Label,
    pub sets: Vec<ElementarySet>,
}

impl Grammar {
    pub fn set(&self, name: &str) -> Option<(usize, &ElementarySet)> {
        self.sets.iter().enumerate().find(|(_, s)| s.name == name)
    }

    /// No auxiliary component anywhere.
    pub fn is_substitution_only(&self) -> bool {
        self.sets.iter().flat_map(|s| &s.components).all(|c| c.class == TreeClass::Initial)
    }

    /// Every set carries at least one terminal leaf.
    pub fn is_lexicalized(&self) -> bool {
        self.sets.iter().all(|s| !s.terminals().is_empty())
    }

    pub fn size_bound(&self) -> SizeBound {
        if self.is_lexicalized() {
            return SizeBound::Lexical;
        }
        let branching = self.sets.iter().all(|s| !s.terminals().is_empty() || s.slot_count() >= 2);
        if branching {
            SizeBound::Branching
        } else {
            SizeBound::Unbounded
        }
    }

    /// Sets that may root a derivation: singleton initial trees labelled with the start symbol.
    pub fn start_sets(&self) -> impl Iterator<Item = (usize, &ElementarySet)> {
        self.sets.iter().enumerate().filter(|(_, s)| {
            s.is_singleton()
                && s.components[0].class == TreeClass::Initial
                && s.components[0].root_label() == Some(&self.start)
        })
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_grammar(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    InvalidSymbol,
    RootNotInternal,
    LeafWithChildren,
    FootInInitial,
    MissingFoot,
    MultipleFeet,
    FootLabelMismatch,
    EmptySet,
    DuplicateSetName,
    DuplicateComponentName,
    AnchorAbsent,
    NoStartTree,
}

/// One broken invariant, located as precisely as possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub set: Option<String>,
    pub component: Option<String>,
    pub address: Option<GornAddress>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = &self.set {
            write!(f, "set {s}")?;
            if let Some(c) = &self.component {
                write!(f, ", component {c}")?;
            }
            if let Some(a) = &self.address {
                write!(f, " at {a}")?;
            }
            f.write_str(": ")?;
        }
        f.write_str(&self.message)
    }
}

struct Collector<'a> {
    set: &'a str,
    out: Vec<Violation>,
}

impl Collector<'_> {
    fn push(&mut self, kind: ViolationKind, component: Option<&str>, address: Option<GornAddress>, message: String) {
        self.out.push(Violation {
            kind,
            set: Some(self.set.to_string()),
            component: component.map(str::to_string),
            address,
            message,
        });
    }
}

fn check_tree(tree: &ElementaryTree, col: &mut Collector<'_>) {
    let comp = Some(tree.name.as_str());
    if let Err(e) = check_symbol(&tree.name) {
        col.push(ViolationKind::InvalidSymbol, comp, None, format!("bad component name: {e}"));
    }
    if tree.root.head.kind() != NodeKind::Internal {
        col.push(ViolationKind::RootNotInternal, comp, Some(GornAddress::root()), "root node must be internal".into());
    }
    let addrs = addresses_of(tree);
    for (a, kind) in &addrs {
        let n = node_at(tree, a).expect("address from addresses_of");
        if *kind != NodeKind::Internal && !n.children().is_empty() {
            col.push(ViolationKind::LeafWithChildren, comp, Some(a.clone()), format!("{kind} node has children"));
        }
        if *kind == NodeKind::Internal && n.children().is_empty() {
            col.push(ViolationKind::LeafWithChildren, comp, Some(a.clone()), "internal node without children".into());
        }
    }
    let feet: Vec<_> = addrs.iter().filter(|(_, k)| *k == NodeKind::Foot).collect();
    match tree.class {
        TreeClass::Initial => {
            for (a, _) in &feet {
                col.push(ViolationKind::FootInInitial, comp, Some(a.clone()), "foot node in initial tree".into());
            }
        }
        TreeClass::Auxiliary => {
            if feet.is_empty() {
                col.push(ViolationKind::MissingFoot, comp, None, "auxiliary tree without foot node".into());
            } else if feet.len() > 1 {
                col.push(
                    ViolationKind::MultipleFeet,
                    comp,
                    Some(feet[1].0.clone()),
                    format!("{} foot nodes in auxiliary tree", feet.len()),
                );
            }
            let root = tree.root_label();
            for (a, _) in &feet {
                let foot = node_at(tree, a).expect("foot address").head.label();
                if foot != root {
                    col.push(
                        ViolationKind::FootLabelMismatch,
                        comp,
                        Some(a.clone()),
                        format!(
                            "foot label {} differs from root label {}",
                            foot.map_or("?", Label::as_str),
                            root.map_or("?", Label::as_str)
                        ),
                    );
                }
            }
        }
    }
}

/// Lists every broken invariant; empty iff the grammar is well formed.
pub fn validate_grammar(g: &Grammar) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut names = HashSet::new();
    for set in &g.sets {
        let mut col = Collector { set: &set.name, out: Vec::new() };
        if let Err(e) = check_symbol(&set.name) {
            col.push(ViolationKind::InvalidSymbol, None, None, format!("bad set name: {e}"));
        }
        if !names.insert(set.name.as_str()) {
            col.push(ViolationKind::DuplicateSetName, None, None, "duplicate set name".into());
        }
        if set.components.is_empty() {
            col.push(ViolationKind::EmptySet, None, None, "set has no components".into());
        }
        let mut comp_names = HashSet::new();
        for c in &set.components {
            if !comp_names.insert(c.name.as_str()) {
                col.push(ViolationKind::DuplicateComponentName, Some(&c.name), None, "duplicate component name".into());
            }
            check_tree(c, &mut col);
        }
        if let Some(anchor) = &set.anchor {
            if !set.terminals().contains(anchor) {
                col.push(
                    ViolationKind::AnchorAbsent,
                    None,
                    None,
                    format!("anchor '{anchor} does not occur in any component"),
                );
            }
        }
        out.extend(col.out);
    }
    if g.start_sets().next().is_none() {
        out.push(Violation {
            kind: ViolationKind::NoStartTree,
            set: None,
            component: None,
            address: None,
            message: format!("no singleton initial tree rooted in start symbol {}", g.start),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_grammar_unchecked;

    #[test]
    fn foot_label_mismatch_names_component() {
        let g =
            parse_grammar_unchecked("grammar g\nstart S\ntree a initial (S 'a)\ntree b auxiliary (VP 'b S*)").unwrap();
        let v = validate_grammar(&g);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::FootLabelMismatch);
        assert_eq!(v[0].component.as_deref(), Some("b"));
        assert_eq!(v[0].address.as_ref().unwrap().to_string(), "2");
    }

    #[test]
    fn anchor_must_occur() {
        let g = parse_grammar_unchecked(
            "grammar g\nstart S\ntree a initial (S 'a)\nset s anchor 'v1\n  component c initial (S 'v2)",
        )
        .unwrap();
        let v = validate_grammar(&g);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::AnchorAbsent);
        assert_eq!(v[0].set.as_deref(), Some("s"));
    }

    #[test]
    fn flags() {
        let g = parse_grammar_unchecked("grammar g\nstart S\ntree a initial (S eps)\ntree b auxiliary (S 'a S* 'b)")
            .unwrap();
        assert!(validate_grammar(&g).is_empty());
        assert!(!g.is_substitution_only());
        assert!(!g.is_lexicalized());
    }

    #[test]
    fn missing_start_tree() {
        let g = parse_grammar_unchecked("grammar g\nstart S\ntree a initial (NP 'a)").unwrap();
        let v = validate_grammar(&g);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::NoStartTree);
    }
}
