#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use mctag::tree::{Constraint, Head};
use mctag::{ElementaryTree, Label, Node, Token, TreeClass};
use proptest::prelude::*;

pub const SHIPPED: [&str; 6] =
    ["fig1_fsg.mcg", "fig2_cfg.mcg", "fsg_center_m1.mcg", "fsg_center_m2.mcg", "cfg_center.mcg", "scrambling_n4.mcg"];

pub fn fragment_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

pub fn fragment_text(name: &str) -> String {
    std::fs::read_to_string(fragment_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Sym {
    T(String),
    N(String),
}

/// Reads `tree` lines of a substitution-only grammar file as rewrite rules
/// `root -> frontier`. Deliberately naive: no shared code with the library parser.
fn rules(text: &str) -> (String, Vec<(String, Vec<Sym>)>) {
    let mut start = String::new();
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap().trim();
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.first() {
            Some(&"start") => start = words[1].to_string(),
            Some(&"tree") => {
                assert_eq!(words[2], "initial", "oracle handles initial trees only");
                let sexpr = words[3..].join(" ");
                let spaced = sexpr.replace('(', " ( ").replace(')', " ) ");
                let atoms: Vec<&str> = spaced.split_whitespace().collect();
                let root = atoms[1].to_string();
                let mut frontier = Vec::new();
                for (i, a) in atoms.iter().enumerate() {
                    if let Some(t) = a.strip_prefix('\'') {
                        frontier.push(Sym::T(t.to_string()));
                    } else if let Some(n) = a.strip_suffix('!') {
                        frontier.push(Sym::N(n.to_string()));
                    } else {
                        assert!(*a == "(" || *a == ")" || atoms[i - 1] == "(", "unexpected atom {a}");
                    }
                }
                out.push((root, frontier));
            }
            _ => {}
        }
    }
    (start, out)
}

/// Every terminal string of length at most `max_len`, by leftmost rewriting.
/// Assumes every nonterminal derives at least one token (no epsilon rules).
pub fn cfg_oracle(text: &str, max_len: usize) -> BTreeSet<Vec<String>> {
    let (start, rules) = rules(text);
    let mut out = BTreeSet::new();
    let mut stack = vec![vec![Sym::N(start)]];
    while let Some(form) = stack.pop() {
        if form.len() > max_len {
            continue;
        }
        match form.iter().position(|s| matches!(s, Sym::N(_))) {
            None => {
                out.insert(form.iter().map(|s| if let Sym::T(t) = s { t.clone() } else { unreachable!() }).collect());
            }
            Some(i) => {
                let Sym::N(nt) = &form[i] else { unreachable!() };
                for (lhs, rhs) in &rules {
                    if lhs == nt {
                        let mut next = form[..i].to_vec();
                        next.extend(rhs.iter().cloned());
                        next.extend(form[i + 1..].iter().cloned());
                        stack.push(next);
                    }
                }
            }
        }
    }
    out
}

pub fn strings(tokens: &[Vec<Token>]) -> BTreeSet<Vec<String>> {
    tokens.iter().map(|s| s.iter().map(|t| t.as_str().to_string()).collect()).collect()
}

pub fn label(s: &str) -> Label {
    Label::new(s).unwrap()
}

fn arb_label() -> impl Strategy<Value = Label> {
    prop_oneof![Just(label("A")), Just(label("B"))]
}

fn arb_leaf() -> impl Strategy<Value = Node> {
    prop_oneof![
        3 => (0..4u8).prop_map(|i| Node::leaf(Head::Leaf(Token::new(&format!("t{i}")).unwrap()))),
        2 => arb_label().prop_map(|l| Node::leaf(Head::Slot(l))),
        1 => Just(Node::leaf(Head::Epsilon)),
    ]
}

fn arb_constraint() -> impl Strategy<Value = Constraint> {
    prop_oneof![4 => Just(Constraint::Allowed), 1 => Just(Constraint::Null), 1 => Just(Constraint::Obligatory)]
}

/// Foot-free subtrees.
pub fn arb_subtree() -> impl Strategy<Value = Node> {
    arb_leaf().prop_recursive(4, 24, 3, |inner| {
        (arb_label(), arb_constraint(), prop::collection::vec(inner, 1..=3))
            .prop_map(|(l, c, kids)| Node::internal(l, c, kids))
    })
}

/// An initial tree with an internal root and at least one substitution slot.
pub fn arb_initial_with_slot() -> impl Strategy<Value = ElementaryTree> {
    (arb_label(), prop::collection::vec(arb_subtree(), 0..3), arb_label(), any::<prop::sample::Index>()).prop_map(
        |(root, mut kids, slot, at)| {
            let pos = at.index(kids.len() + 1);
            kids.insert(pos, Node::leaf(Head::Slot(slot)));
            ElementaryTree {
                name: "h".into(),
                class: TreeClass::Initial,
                root: Node::internal(root, Constraint::Allowed, kids),
            }
        },
    )
}

/// An initial tree rooted in `root`.
pub fn initial_rooted(root: Label, kids: Vec<Node>) -> ElementaryTree {
    let kids = if kids.is_empty() { vec![Node::leaf(Head::Epsilon)] } else { kids };
    ElementaryTree {
        name: "t".into(),
        class: TreeClass::Initial,
        root: Node::internal(root, Constraint::Allowed, kids),
    }
}

/// An auxiliary tree rooted in `root` whose foot sits at depth 1 or 2.
pub fn auxiliary_rooted(
    root: Label,
    left: Vec<Node>,
    right: Vec<Node>,
    nested: Option<(Label, Node)>,
) -> ElementaryTree {
    let foot = Node::leaf(Head::Foot(root.clone()));
    let spine = match nested {
        Some((l, side)) => Node::internal(l, Constraint::Allowed, vec![side.clone(), foot, side]),
        None => foot,
    };
    let mut kids = left;
    kids.push(spine);
    kids.extend(right);
    ElementaryTree {
        name: "b".into(),
        class: TreeClass::Auxiliary,
        root: Node::internal(root, Constraint::Allowed, kids),
    }
}

/// Reorders a vector without randomness: reversal followed by rotation.
pub fn reorder<T: Clone>(v: &[T], rotate: usize) -> Vec<T> {
    let mut out: Vec<T> = v.iter().rev().cloned().collect();
    if !out.is_empty() {
        let k = rotate % out.len();
        out.rotate_left(k);
    }
    out
}
