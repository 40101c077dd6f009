use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::address::GornAddress;
use crate::grammar::Grammar;
use crate::tree::{node_at, Head, TreeClass};

use super::derived::{adjoin, substitute, DerivedTree, Origin};
use super::{ComposeError, OccurrenceId};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub id: OccurrenceId,
    pub set: String,
    pub component: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operation {
    Substitution,
    Adjunction,
}

impl Operation {
    pub fn short_name(self) -> &'static str {
        match self {
            Operation::Substitution => "sub",
            Operation::Adjunction => "adj",
        }
    }
}

/// Where one component of an attached set goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentAttachment {
    /// Fresh id of the component instance being attached.
    pub occurrence: OccurrenceId,
    pub component: String,
    /// Host occurrence and an address in its elementary tree.
    pub parent: OccurrenceId,
    pub address: GornAddress,
    pub operation: Operation,
}

/// One derivation step: every component of `set` attaches into a single host occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AttachmentEdge {
    pub set: String,
    pub components: Vec<ComponentAttachment>,
}

impl AttachmentEdge {
    /// Id naming this set occurrence: the id of its first component.
    pub fn id(&self) -> OccurrenceId {
        self.components.first().map_or(0, |c| c.occurrence)
    }

    /// The common host occurrence, if the edge is tree-local.
    pub fn parent(&self) -> Option<OccurrenceId> {
        let first = self.components.first()?.parent;
        self.components.iter().all(|c| c.parent == first).then_some(first)
    }

    fn sort_key(&self) -> (OccurrenceId, GornAddress) {
        let parent = self.components.iter().map(|c| c.parent).min().unwrap_or(0);
        let addr = self.components.iter().map(|c| c.address.clone()).min().unwrap_or_default();
        (parent, addr)
    }
}

/// Record of which set occurrences attached where.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivationTree {
    pub root: Occurrence,
    pub edges: Vec<AttachmentEdge>,
}

impl DerivationTree {
    pub fn new(root: Occurrence) -> Self {
        DerivationTree { root, edges: Vec::new() }
    }

    /// Edges sorted by (host occurrence, lowest target address).
    pub fn canonical(&self) -> DerivationTree {
        let mut d = self.clone();
        d.edges.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()).then_with(|| a.cmp(b)));
        d
    }

    /// Number of set occurrences, the root included.
    pub fn set_count(&self) -> usize {
        1 + self.edges.len()
    }

    /// Every component occurrence.
    pub fn occurrences(&self) -> Vec<Occurrence> {
        let mut out = vec![self.root.clone()];
        for e in &self.edges {
            out.extend(e.components.iter().map(|c| Occurrence {
                id: c.occurrence,
                set: e.set.clone(),
                component: c.component.clone(),
            }));
        }
        out
    }

    /// Maps each component occurrence to (set name, id of its set occurrence).
    pub fn owners(&self) -> BTreeMap<OccurrenceId, (&str, OccurrenceId)> {
        let mut m = BTreeMap::new();
        m.insert(self.root.id, (self.root.set.as_str(), self.root.id));
        for e in &self.edges {
            for c in &e.components {
                m.insert(c.occurrence, (e.set.as_str(), e.id()));
            }
        }
        m
    }

    /// For a set occurrence id, the set occurrence it attached into.
    pub fn parent_set_of(&self, set_occurrence: OccurrenceId) -> Option<(String, OccurrenceId)> {
        let owners = self.owners();
        let edge = self.edges.iter().find(|e| e.id() == set_occurrence)?;
        let (set, id) = owners.get(&edge.parent()?)?;
        Some((set.to_string(), *id))
    }

    /// Graphviz rendering: one node per set occurrence, one labelled arc per
    /// attached component.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let owners = self.owners();
        let node = |set: &str, id: OccurrenceId| format!("\"{set}#{id}\"");
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{graph_name}\" {{");
        let _ = writeln!(out, "  {};", node(&self.root.set, self.root.id));
        let d = self.canonical();
        for e in &d.edges {
            let _ = writeln!(out, "  {};", node(&e.set, e.id()));
        }
        for e in &d.edges {
            for c in &e.components {
                let (pset, pid) = owners.get(&c.parent).copied().unwrap_or(("?", c.parent));
                let _ = writeln!(
                    out,
                    "  {} -> {} [label=\"{}@{}:{}\"];",
                    node(pset, pid),
                    node(&e.set, e.id()),
                    c.component,
                    c.address,
                    c.operation.short_name()
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A derived tree paired with the record that produced it.
#[derive(Debug, Clone)]
pub struct DerivationState {
    pub derived: DerivedTree,
    pub record: DerivationTree,
    index: BTreeMap<OccurrenceId, (usize, usize)>,
}

impl DerivationState {
    /// Starts a derivation from a singleton initial set rooted in the start symbol.
    pub fn start(g: &Grammar, set: &str, id: OccurrenceId) -> Result<Self, ComposeError> {
        let (si, s) = g.set(set).ok_or_else(|| ComposeError::UnknownSet(set.to_string()))?;
        let ok = s.is_singleton()
            && s.components[0].class == TreeClass::Initial
            && s.components[0].root_label() == Some(&g.start);
        if !ok {
            return Err(ComposeError::BadRoot(set.to_string()));
        }
        let comp = &s.components[0];
        Ok(DerivationState {
            derived: DerivedTree::from_elementary(comp, id),
            record: DerivationTree::new(Occurrence { id, set: s.name.clone(), component: comp.name.clone() }),
            index: BTreeMap::from([(id, (si, 0))]),
        })
    }

    /// Attaches every component of the edge's set in one atomic step.
    /// On error `self` is untouched.
    pub fn attach_set(&self, g: &Grammar, edge: &AttachmentEdge) -> Result<DerivationState, ComposeError> {
        let (si, set) = g.set(&edge.set).ok_or_else(|| ComposeError::UnknownSet(edge.set.clone()))?;
        let expected: Vec<String> = set.components.iter().map(|c| c.name.clone()).collect();
        let found: Vec<String> = edge.components.iter().map(|c| c.component.clone()).collect();
        if expected != found {
            return Err(ComposeError::ComponentMismatch { set: set.name.clone(), expected, found });
        }
        let parent = edge.components[0].parent;
        for c in &edge.components {
            if c.parent != parent {
                return Err(ComposeError::LocalityViolation { first: parent, second: c.parent });
            }
        }
        let mut seen_ids = BTreeSet::new();
        let mut seen_addrs = BTreeSet::new();
        for c in &edge.components {
            if self.index.contains_key(&c.occurrence) || !seen_ids.insert(c.occurrence) {
                return Err(ComposeError::DuplicateOccurrence(c.occurrence));
            }
            if !seen_addrs.insert(&c.address) {
                return Err(ComposeError::DuplicateTarget(c.address.clone()));
            }
        }
        let &(psi, pci) = self.index.get(&parent).ok_or(ComposeError::UnknownOccurrence(parent))?;
        let host_tree = &g.sets[psi].components[pci];

        let mut order: Vec<usize> = (0..edge.components.len()).collect();
        order.sort_by(|&a, &b| edge.components[a].address.cmp(&edge.components[b].address));

        let mut derived = self.derived.clone();
        for k in order {
            let c = &edge.components[k];
            let elementary = node_at(host_tree, &c.address).map_err(|e| ComposeError::AddressOutOfRange(e.0))?;
            let origin = Origin { occurrence: parent, address: c.address.clone() };
            let Some(at) = derived.find_origin(&origin) else {
                return Err(match elementary.head {
                    Head::Slot(_) => ComposeError::SlotAlreadyFilled { occurrence: parent, address: c.address.clone() },
                    _ => ComposeError::AddressOutOfRange(c.address.clone()),
                });
            };
            let tree = &set.components[k];
            derived = match c.operation {
                Operation::Substitution => substitute(&derived, &at, tree, c.occurrence)?,
                Operation::Adjunction => adjoin(&derived, &at, tree, c.occurrence)?,
            };
        }

        let mut next = DerivationState { derived, record: self.record.clone(), index: self.index.clone() };
        for (k, c) in edge.components.iter().enumerate() {
            next.index.insert(c.occurrence, (si, k));
        }
        next.record.edges.push(edge.clone());
        Ok(next)
    }

    pub fn contains(&self, id: OccurrenceId) -> bool {
        self.index.contains_key(&id)
    }
}

/// Rebuilds the derived tree, applying edges in the given order whenever
/// their host already exists.
pub fn replay_in_order(g: &Grammar, d: &DerivationTree) -> Result<DerivedTree, ComposeError> {
    let mut state = DerivationState::start(g, &d.root.set, d.root.id)?;
    if state.record.root.component != d.root.component {
        return Err(ComposeError::ComponentMismatch {
            set: d.root.set.clone(),
            expected: vec![state.record.root.component.clone()],
            found: vec![d.root.component.clone()],
        });
    }
    let mut remaining: Vec<&AttachmentEdge> = d.edges.iter().collect();
    while !remaining.is_empty() {
        let pos = remaining.iter().position(|e| e.components.first().is_some_and(|c| state.contains(c.parent)));
        let Some(pos) = pos else {
            return Err(ComposeError::Dangling(remaining.iter().map(|e| e.set.clone()).collect()));
        };
        let edge = remaining.remove(pos);
        state = state.attach_set(g, edge)?;
    }
    if !state.derived.is_complete() {
        return Err(ComposeError::Incomplete(state.derived.pending()));
    }
    Ok(state.derived)
}

/// Rebuilds the complete derived tree for a derivation record. Edge order
/// in the record does not matter.
pub fn replay(g: &Grammar, d: &DerivationTree) -> Result<DerivedTree, ComposeError> {
    replay_in_order(g, &d.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_grammar;
    use crate::symbol::join_tokens;

    const MC: &str = "grammar mc\nstart S\n\
        tree host initial (S (N!) (VP 'v0))\n\
        tree noun initial (N 'n)\n\
        set pair anchor 'x\n  component a initial (N 'x)\n  component b auxiliary (S 'y S*)\n";

    fn attach(id: OccurrenceId, comps: &[(&str, OccurrenceId, &str, Operation)], set: &str) -> AttachmentEdge {
        AttachmentEdge {
            set: set.into(),
            components: comps
                .iter()
                .enumerate()
                .map(|(k, (name, parent, addr, op))| ComponentAttachment {
                    occurrence: id + k as u32,
                    component: name.to_string(),
                    parent: *parent,
                    address: addr.parse().unwrap(),
                    operation: *op,
                })
                .collect(),
        }
    }

    #[test]
    fn two_component_set_attaches_in_one_step() {
        let g = parse_grammar(MC).unwrap();
        let s = DerivationState::start(&g, "host", 0).unwrap();
        let e = attach(1, &[("a", 0, "1", Operation::Substitution), ("b", 0, "e", Operation::Adjunction)], "pair");
        let s2 = s.attach_set(&g, &e).unwrap();
        assert_eq!(join_tokens(&s2.derived.tokens()), "y x v0");
        assert_eq!(s2.record.edges.len(), 1);
        assert_eq!(s2.record.edges[0].components.len(), 2);
        assert!(s2.derived.is_complete());
    }

    #[test]
    fn locality_violation_and_atomicity() {
        let g = parse_grammar(MC).unwrap();
        let s = DerivationState::start(&g, "host", 0).unwrap();
        let e = attach(1, &[("a", 0, "1", Operation::Substitution), ("b", 7, "e", Operation::Adjunction)], "pair");
        assert_eq!(s.attach_set(&g, &e).unwrap_err(), ComposeError::LocalityViolation { first: 0, second: 7 });
        // second component fails after the first one would have succeeded
        let e = attach(1, &[("a", 0, "1", Operation::Substitution), ("b", 0, "2", Operation::Adjunction)], "pair");
        assert!(s.attach_set(&g, &e).is_err());
        assert_eq!(s.record.edges.len(), 0);
        assert_eq!(s.derived.pending().len(), 1);
    }

    #[test]
    fn singleton_set_matches_plain_substitution() {
        let g = parse_grammar(MC).unwrap();
        let s = DerivationState::start(&g, "host", 0).unwrap();
        let e = attach(1, &[("noun", 0, "1", Operation::Substitution)], "noun");
        let via_set = s.attach_set(&g, &e).unwrap().derived;
        let noun = &g.set("noun").unwrap().1.components[0];
        let direct = substitute(&s.derived, &"1".parse().unwrap(), noun, 1).unwrap();
        assert_eq!(via_set, direct);
        let filled = s.attach_set(&g, &e).unwrap();
        let again = attach(2, &[("noun", 0, "1", Operation::Substitution)], "noun");
        assert!(matches!(filled.attach_set(&g, &again), Err(ComposeError::SlotAlreadyFilled { .. })));
    }

    #[test]
    fn replay_rejects_bad_records() {
        let g = parse_grammar(MC).unwrap();
        let root = Occurrence { id: 0, set: "host".into(), component: "host".into() };
        let mut d = DerivationTree::new(root.clone());
        assert!(matches!(replay(&g, &d), Err(ComposeError::Incomplete(_))));
        d.edges.push(attach(1, &[("noun", 5, "1", Operation::Substitution)], "noun"));
        assert!(matches!(replay(&g, &d), Err(ComposeError::Dangling(_))));
        d.edges[0] = attach(1, &[("noun", 0, "1", Operation::Substitution)], "ghost");
        assert_eq!(replay(&g, &d), Err(ComposeError::UnknownSet("ghost".into())));
        let bad_root = DerivationTree::new(Occurrence { id: 0, set: "noun".into(), component: "noun".into() });
        assert_eq!(replay(&g, &bad_root), Err(ComposeError::BadRoot("noun".into())));
    }

    #[test]
    fn dot_export_format() {
        let g = parse_grammar(MC).unwrap();
        let s = DerivationState::start(&g, "host", 0).unwrap();
        let e = attach(1, &[("a", 0, "1", Operation::Substitution), ("b", 0, "e", Operation::Adjunction)], "pair");
        let s2 = s.attach_set(&g, &e).unwrap();
        let dot = s2.record.to_dot("w");
        assert!(dot.contains("\"host#0\" -> \"pair#1\" [label=\"a@1:sub\"];"), "{dot}");
        assert!(dot.contains("\"host#0\" -> \"pair#1\" [label=\"b@e:adj\"];"), "{dot}");
        assert_eq!(s2.record.parent_set_of(1), Some(("host".to_string(), 0)));
    }
}
