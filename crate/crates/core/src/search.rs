//! Bounded exhaustive derivation search.
//!
//! Derivations are generated top-down, one component occurrence at a time in
//! id order. For the occurrence under expansion every site (substitution slot
//! or adjoinable node) is decided in address order: left empty, or covered by
//! a set whose components all land on still-undecided sites of that same tree
//! (tree-locality). A set placement is only tried at its lowest site, so each
//! derivation tree is produced exactly once with canonical occurrence ids.
//!
//! Partial derivations are checked against the target after every decision:
//! the partial frontier is a sequence of committed tokens and gaps (open
//! slots, possible adjunction points), and it must glob-match the target.
//! Depth is bounded by iterative deepening on the number of set occurrences.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::address::GornAddress;
use crate::compose::{AttachmentEdge, ComponentAttachment, DerivationTree, Occurrence, OccurrenceId, Operation};
use crate::grammar::{Grammar, SizeBound, Violation};
use crate::symbol::{Label, Token};
use crate::tree::{Constraint, ElementaryTree, Head, Node, TreeClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum set occurrences per derivation, the root included.
    pub max_sets: usize,
    /// Maximum frontier length.
    pub max_yield: usize,
    /// Cap on explored search states; `None` means unbounded.
    pub node_budget: Option<u64>,
}

impl SearchBudget {
    /// The budget that makes recognition of an `n`-token string exact on a
    /// lexicalized grammar.
    pub fn for_length(n: usize) -> Self {
        SearchBudget { max_sets: n.max(1), max_yield: n, node_budget: None }
    }

    /// The exact budget for `n` tokens given the grammar's size bound.
    pub fn exact(bound: SizeBound, n: usize) -> Self {
        let max_sets = bound.max_sets(n).unwrap_or(n).max(1);
        SearchBudget { max_sets, max_yield: n, node_budget: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub derivations: Vec<DerivationTree>,
    /// True iff the whole space for the query was covered.
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub recognized: bool,
    pub witness: Option<DerivationTree>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSearch {
    pub witness: Option<DerivationTree>,
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("grammar {0} is not lexicalized (some set has neither a terminal nor two substitution slots); bounded search would not be a decision procedure")]
    NotLexicalized(String),
    #[error("grammar is invalid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidGrammar(Vec<Violation>),
}

fn check_valid(g: &Grammar) -> Result<(), SearchError> {
    let v = g.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(SearchError::InvalidGrammar(v))
    }
}

fn check_lexicalized(g: &Grammar) -> Result<SizeBound, SearchError> {
    check_valid(g)?;
    let bound = g.size_bound();
    if bound != SizeBound::Unbounded {
        Ok(bound)
    } else {
        Err(SearchError::NotLexicalized(g.name.clone()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SiteKind {
    Slot,
    Adjoin { obligatory: bool },
}

#[derive(Debug)]
struct Site {
    address: GornAddress,
    label: Label,
    kind: SiteKind,
}

#[derive(Debug)]
struct CNode {
    head: Head,
    children: Vec<usize>,
    site: Option<usize>,
}

#[derive(Debug)]
struct CTree {
    nodes: Vec<CNode>,
    sites: Vec<Site>,
}

#[derive(Debug)]
struct Placement {
    set: usize,
    /// Site index in the host tree for each component, in component order.
    sites: Vec<usize>,
}

/// Grammar preprocessed for search.
struct Compiled<'g> {
    g: &'g Grammar,
    trees: Vec<Vec<CTree>>,
    /// `[set][component][site]`: placements whose lowest site is `site`.
    placements: Vec<Vec<Vec<Vec<Placement>>>>,
    start_sets: Vec<usize>,
    bound: SizeBound,
}

fn compile_tree(t: &ElementaryTree, adjoinable: &BTreeSet<Label>) -> CTree {
    fn go(n: &Node, at: GornAddress, adjoinable: &BTreeSet<Label>, out: &mut CTree) -> usize {
        let idx = out.nodes.len();
        out.nodes.push(CNode { head: n.head.clone(), children: Vec::new(), site: None });
        let site = match &n.head {
            Head::Slot(l) => Some(Site { address: at.clone(), label: l.clone(), kind: SiteKind::Slot }),
            Head::Internal(l, c) => match c {
                Constraint::Null => None,
                Constraint::Obligatory => {
                    Some(Site { address: at.clone(), label: l.clone(), kind: SiteKind::Adjoin { obligatory: true } })
                }
                Constraint::Allowed if adjoinable.contains(l) => {
                    Some(Site { address: at.clone(), label: l.clone(), kind: SiteKind::Adjoin { obligatory: false } })
                }
                Constraint::Allowed => None,
            },
            _ => None,
        };
        if let Some(s) = site {
            out.nodes[idx].site = Some(out.sites.len());
            out.sites.push(s);
        }
        for (i, c) in n.children.iter().enumerate() {
            let ci = go(c, at.child(i as u32 + 1), adjoinable, out);
            out.nodes[idx].children.push(ci);
        }
        idx
    }
    let mut out = CTree { nodes: Vec::new(), sites: Vec::new() };
    go(&t.root, GornAddress::root(), adjoinable, &mut out);
    // preorder traversal visits addresses in increasing order, so sites are sorted
    out
}

fn placements_into(host: &CTree, set_idx: usize, comps: &[ElementaryTree]) -> Vec<Placement> {
    fn fits(site: &Site, comp: &ElementaryTree) -> bool {
        let kind_ok = matches!(
            (site.kind, comp.class),
            (SiteKind::Slot, TreeClass::Initial) | (SiteKind::Adjoin { .. }, TreeClass::Auxiliary)
        );
        kind_ok && comp.root_label() == Some(&site.label)
    }
    fn go(host: &CTree, comps: &[ElementaryTree], chosen: &mut Vec<usize>, set_idx: usize, out: &mut Vec<Placement>) {
        let k = chosen.len();
        if k == comps.len() {
            out.push(Placement { set: set_idx, sites: chosen.clone() });
            return;
        }
        for (si, site) in host.sites.iter().enumerate() {
            if !chosen.contains(&si) && fits(site, &comps[k]) {
                chosen.push(si);
                go(host, comps, chosen, set_idx, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(host, comps, &mut Vec::new(), set_idx, &mut out);
    out
}

impl<'g> Compiled<'g> {
    fn new(g: &'g Grammar) -> Self {
        let adjoinable: BTreeSet<Label> = g
            .sets
            .iter()
            .flat_map(|s| &s.components)
            .filter(|c| c.class == TreeClass::Auxiliary)
            .filter_map(|c| c.root_label().cloned())
            .collect();
        let trees: Vec<Vec<CTree>> =
            g.sets.iter().map(|s| s.components.iter().map(|c| compile_tree(c, &adjoinable)).collect()).collect();
        let placements = trees
            .iter()
            .map(|host_set| {
                host_set
                    .iter()
                    .map(|host| {
                        let mut by_site: Vec<Vec<Placement>> = (0..host.sites.len()).map(|_| Vec::new()).collect();
                        for (si, set) in g.sets.iter().enumerate() {
                            for p in placements_into(host, si, &set.components) {
                                let lowest = *p.sites.iter().min().expect("sets are nonempty");
                                by_site[lowest].push(p);
                            }
                        }
                        by_site
                    })
                    .collect()
            })
            .collect();
        Compiled { g, trees, placements, start_sets: g.start_sets().map(|(i, _)| i).collect(), bound: g.size_bound() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SiteState {
    Undecided,
    Empty,
    Filled(OccurrenceId),
}

#[derive(Debug, Clone, Copy)]
struct OccRec {
    set: usize,
    comp: usize,
}

#[derive(Debug, Clone)]
struct EdgeRec {
    set: usize,
    parent: OccurrenceId,
    /// (fresh occurrence, site in the parent tree) per component.
    comps: Vec<(OccurrenceId, usize)>,
}

/// Emits the frontier of material displaced under a foot.
type FootFill<'f, 'c> = &'f dyn Fn(&mut Vec<Item<'c>>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Item<'a> {
    Tok(&'a Token),
    Gap,
}

struct State {
    occs: Vec<OccRec>,
    sites: Vec<Vec<SiteState>>,
    edges: Vec<EdgeRec>,
}

impl State {
    fn set_count(&self) -> usize {
        1 + self.edges.len()
    }
}

/// Wildcard match where each gap stands for any (possibly empty) token run.
fn glob_match(pattern: &[Item<'_>], target: &[Token]) -> bool {
    let (mut pi, mut ti) = (0usize, 0usize);
    let mut star: Option<usize> = None;
    let mut mark = 0usize;
    while ti < target.len() {
        match pattern.get(pi) {
            Some(Item::Tok(t)) if **t == target[ti] => {
                pi += 1;
                ti += 1;
            }
            Some(Item::Gap) => {
                star = Some(pi);
                mark = ti;
                pi += 1;
            }
            _ => match star {
                Some(s) => {
                    pi = s + 1;
                    mark += 1;
                    ti = mark;
                }
                None => return false,
            },
        }
    }
    pattern[pi..].iter().all(|i| *i == Item::Gap)
}

struct Searcher<'c, 'g, F> {
    c: &'c Compiled<'g>,
    target: Option<&'c [Token]>,
    max_yield: usize,
    limit: usize,
    hard_cap: usize,
    node_budget: Option<u64>,
    nodes: u64,
    cut: bool,
    aborted: bool,
    visit: F,
}

impl<'c, 'g, F> Searcher<'c, 'g, F>
where
    F: FnMut(&[Token], DerivationTree) -> ControlFlow<()>,
{
    fn tree(&self, st: &State, o: usize) -> &'c CTree {
        let r = st.occs[o];
        &self.c.trees[r.set][r.comp]
    }

    fn push(out: &mut Vec<Item<'c>>, item: Item<'c>) {
        if item == Item::Gap && out.last() == Some(&Item::Gap) {
            return;
        }
        out.push(item);
    }

    fn expand_occ(&self, st: &State, o: usize, foot: Option<FootFill<'_, 'c>>, out: &mut Vec<Item<'c>>) {
        self.expand_node(st, o, 0, foot, out);
    }

    fn expand_node(&self, st: &State, o: usize, ni: usize, foot: Option<FootFill<'_, 'c>>, out: &mut Vec<Item<'c>>) {
        let node = &self.tree(st, o).nodes[ni];
        if let (Head::Internal(..), Some(si)) = (&node.head, node.site) {
            match st.sites[o][si] {
                SiteState::Filled(child) => {
                    let inner = |out: &mut Vec<Item<'c>>| self.expand_inner(st, o, ni, foot, out);
                    self.expand_occ(st, child as usize, Some(&inner), out);
                }
                SiteState::Undecided => {
                    Self::push(out, Item::Gap);
                    self.expand_inner(st, o, ni, foot, out);
                    Self::push(out, Item::Gap);
                }
                SiteState::Empty => self.expand_inner(st, o, ni, foot, out),
            }
        } else {
            self.expand_inner(st, o, ni, foot, out);
        }
    }

    fn expand_inner(&self, st: &State, o: usize, ni: usize, foot: Option<FootFill<'_, 'c>>, out: &mut Vec<Item<'c>>) {
        let node = &self.tree(st, o).nodes[ni];
        match &node.head {
            Head::Internal(..) => {
                for &ch in &node.children {
                    self.expand_node(st, o, ch, foot, out);
                }
            }
            Head::Slot(_) => match node.site.map(|si| st.sites[o][si]) {
                Some(SiteState::Filled(child)) => self.expand_occ(st, child as usize, None, out),
                _ => Self::push(out, Item::Gap),
            },
            Head::Foot(_) => match foot {
                Some(f) => f(out),
                None => Self::push(out, Item::Gap),
            },
            Head::Leaf(t) => out.push(Item::Tok(t)),
            Head::Epsilon => {}
        }
    }

    fn frontier(&self, st: &State) -> Vec<Item<'c>> {
        let mut out = Vec::new();
        self.expand_occ(st, 0, None, &mut out);
        out
    }

    fn viable(&self, st: &State) -> bool {
        let items = self.frontier(st);
        match self.target {
            Some(t) => glob_match(&items, t),
            None => items.iter().filter(|i| matches!(i, Item::Tok(_))).count() <= self.max_yield,
        }
    }

    fn record(&self, st: &State) -> DerivationTree {
        let g = self.c.g;
        let root = st.occs[0];
        let root_set = &g.sets[root.set];
        let mut d = DerivationTree::new(Occurrence {
            id: 0,
            set: root_set.name.clone(),
            component: root_set.components[root.comp].name.clone(),
        });
        for e in &st.edges {
            let set = &g.sets[e.set];
            let host = self.tree(st, e.parent as usize);
            let components = e
                .comps
                .iter()
                .enumerate()
                .map(|(k, &(occ, site))| {
                    let s = &host.sites[site];
                    ComponentAttachment {
                        occurrence: occ,
                        component: set.components[k].name.clone(),
                        parent: e.parent,
                        address: s.address.clone(),
                        operation: match s.kind {
                            SiteKind::Slot => Operation::Substitution,
                            SiteKind::Adjoin { .. } => Operation::Adjunction,
                        },
                    }
                })
                .collect();
            d.edges.push(AttachmentEdge { set: set.name.clone(), components });
        }
        d
    }

    fn emit(&mut self, st: &State) -> ControlFlow<()> {
        if st.set_count() != self.limit {
            return ControlFlow::Continue(());
        }
        let items = self.frontier(st);
        let tokens: Vec<Token> = items
            .iter()
            .map(|i| match i {
                Item::Tok(t) => (*t).clone(),
                Item::Gap => unreachable!("complete derivations have no gaps"),
            })
            .collect();
        let ok = match self.target {
            Some(t) => tokens == t,
            None => tokens.len() <= self.max_yield,
        };
        if !ok {
            return ControlFlow::Continue(());
        }
        let d = self.record(st);
        (self.visit)(&tokens, d)
    }

    fn step(&mut self, st: &mut State, mut o: usize, mut s: usize) -> ControlFlow<()> {
        self.nodes += 1;
        if self.node_budget.is_some_and(|b| self.nodes > b) {
            self.aborted = true;
            return ControlFlow::Break(());
        }
        loop {
            if o == st.occs.len() {
                return self.emit(st);
            }
            let n = st.sites[o].len();
            while s < n && st.sites[o][s] != SiteState::Undecided {
                s += 1;
            }
            if s < n {
                break;
            }
            o += 1;
            s = 0;
        }
        let host = st.occs[o];
        let site_kind = self.c.trees[host.set][host.comp].sites[s].kind;

        if site_kind == (SiteKind::Adjoin { obligatory: false }) {
            st.sites[o][s] = SiteState::Empty;
            let flow = if self.viable(st) { self.step(st, o, s + 1) } else { ControlFlow::Continue(()) };
            st.sites[o][s] = SiteState::Undecided;
            flow?;
        }

        let c = self.c;
        for p in &c.placements[host.set][host.comp][s] {
            if p.sites.iter().any(|&x| st.sites[o][x] != SiteState::Undecided) {
                continue;
            }
            let new_count = st.set_count() + 1;
            if new_count > self.limit {
                if new_count <= self.hard_cap {
                    self.cut = true;
                }
                continue;
            }
            let first = st.occs.len() as OccurrenceId;
            let mut comps = Vec::with_capacity(p.sites.len());
            for (k, &site) in p.sites.iter().enumerate() {
                let id = first + k as OccurrenceId;
                st.occs.push(OccRec { set: p.set, comp: k });
                st.sites.push(vec![SiteState::Undecided; c.trees[p.set][k].sites.len()]);
                st.sites[o][site] = SiteState::Filled(id);
                comps.push((id, site));
            }
            st.edges.push(EdgeRec { set: p.set, parent: o as OccurrenceId, comps });

            let flow = if self.viable(st) { self.step(st, o, s + 1) } else { ControlFlow::Continue(()) };

            st.edges.pop();
            for &site in &p.sites {
                st.sites[o][site] = SiteState::Undecided;
            }
            st.occs.truncate(first as usize);
            st.sites.truncate(first as usize);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

struct RunStats {
    exhausted: bool,
}

/// Drives iterative deepening and hands every derivation within budget to
/// `visit`, smallest first. `visit` may stop the search early.
fn run<F>(c: &Compiled<'_>, budget: &SearchBudget, target: Option<&[Token]>, visit: F) -> RunStats
where
    F: FnMut(&[Token], DerivationTree) -> ControlFlow<()>,
{
    let hard_cap = c.bound.max_sets(target.map_or(budget.max_yield, <[Token]>::len)).unwrap_or(usize::MAX);
    let max_limit = budget.max_sets.min(hard_cap);
    let mut s = Searcher {
        c,
        target,
        max_yield: budget.max_yield,
        limit: 1,
        hard_cap,
        node_budget: budget.node_budget,
        nodes: 0,
        cut: false,
        aborted: false,
        visit,
    };
    if let Some(t) = target {
        if t.len() > budget.max_yield {
            // the target itself is outside the budget
            return RunStats { exhausted: true };
        }
    }
    for limit in 1..=max_limit {
        s.limit = limit;
        s.cut = false;
        for &root in &c.start_sets {
            let n_sites = c.trees[root][0].sites.len();
            let mut st = State {
                occs: vec![OccRec { set: root, comp: 0 }],
                sites: vec![vec![SiteState::Undecided; n_sites]],
                edges: Vec::new(),
            };
            if !s.viable(&st) {
                continue;
            }
            if s.step(&mut st, 0, 0).is_break() {
                return RunStats { exhausted: !s.aborted };
            }
        }
        if !s.cut {
            return RunStats { exhausted: true };
        }
    }
    RunStats { exhausted: !s.cut }
}

/// All derivations within `budget`, optionally restricted to those yielding `target`.
/// Ordered by size, then by search order; deterministic.
pub fn enumerate_derivations(
    g: &Grammar,
    budget: &SearchBudget,
    target: Option<&[Token]>,
) -> Result<SearchResult, SearchError> {
    check_valid(g)?;
    let c = Compiled::new(g);
    let mut derivations = Vec::new();
    let stats = run(&c, budget, target, |_, d| {
        derivations.push(d);
        ControlFlow::Continue(())
    });
    Ok(SearchResult { derivations, exhausted: stats.exhausted })
}

/// Exact membership test for lexicalized grammars, with a smallest witness.
pub fn recognize(g: &Grammar, s: &[Token]) -> Result<Recognition, SearchError> {
    let w = find_witness(g, s, |_| true)?;
    Ok(Recognition { recognized: w.witness.is_some(), witness: w.witness })
}

/// Some derivation of `s` satisfying `pred`, searching all derivations of
/// `s` before answering `None`.
pub fn find_witness<P>(g: &Grammar, s: &[Token], pred: P) -> Result<WitnessSearch, SearchError>
where
    P: Fn(&DerivationTree) -> bool,
{
    find_witness_within(g, s, &SearchBudget::exact(g.size_bound(), s.len()), pred)
}

/// [`find_witness`] under an explicit budget; `exhausted` is false when the
/// budget cut the space short.
pub fn find_witness_within<P>(
    g: &Grammar,
    s: &[Token],
    budget: &SearchBudget,
    pred: P,
) -> Result<WitnessSearch, SearchError>
where
    P: Fn(&DerivationTree) -> bool,
{
    check_lexicalized(g)?;
    let c = Compiled::new(g);
    let mut witness = None;
    let stats = run(&c, budget, Some(s), |_, d| {
        if pred(&d) {
            witness = Some(d);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let exhausted = witness.is_some() || stats.exhausted;
    Ok(WitnessSearch { witness, exhausted })
}

/// Every yield of length at most `max_len`, ordered by length then lexicographically.
pub fn generate_language(g: &Grammar, max_len: usize) -> Result<Vec<Vec<Token>>, SearchError> {
    let bound = check_lexicalized(g)?;
    let c = Compiled::new(g);
    let mut seen: BTreeSet<(usize, Vec<Token>)> = BTreeSet::new();
    run(&c, &SearchBudget::exact(bound, max_len), None, |toks, _| {
        seen.insert((toks.len(), toks.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(seen.into_iter().map(|(_, t)| t).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compose::replay;
    use crate::format::parse_grammar;
    use crate::symbol::{join_tokens, tokenize};

    fn toks(s: &str) -> Vec<Token> {
        tokenize(s).unwrap()
    }

    fn items<'a>(pattern: &'a [Option<Token>]) -> Vec<Item<'a>> {
        pattern.iter().map(|t| t.as_ref().map_or(Item::Gap, Item::Tok)).collect()
    }

    #[test]
    fn glob() {
        let a = Some(Token::new("a").unwrap());
        let b = Some(Token::new("b").unwrap());
        let t = toks("a x b");
        assert!(glob_match(&items(&[a.clone(), None, b.clone()]), &t));
        assert!(glob_match(&items(&[None]), &t));
        assert!(glob_match(&items(&[None]), &[]));
        assert!(!glob_match(&items(&[b.clone(), None]), &t));
        assert!(!glob_match(&items(&[a.clone(), b.clone()]), &t));
        assert!(glob_match(&items(&[None, b.clone()]), &t));
        assert!(!glob_match(&items(std::slice::from_ref(&a)), &[]));
        assert!(glob_match(&items(&[None, a, None, b, None]), &t));
    }

    const ANBN: &str = "grammar anbn\nstart S\ntree alpha initial (S eps)\ntree beta auxiliary (S 'a S* 'b)\n";

    #[test]
    fn anbn_enumeration() {
        let g = parse_grammar(ANBN).unwrap();
        let budget = SearchBudget { max_sets: 10, max_yield: 6, node_budget: None };
        let r = enumerate_derivations(&g, &budget, None).unwrap();
        assert!(r.exhausted);
        let yields: Vec<String> = r.derivations.iter().map(|d| join_tokens(&replay(&g, d).unwrap().tokens())).collect();
        assert_eq!(yields, ["", "a b", "a a b b", "a a a b b b"]);
    }

    #[test]
    fn set_budget_cut_reports_not_exhausted() {
        let g = parse_grammar(ANBN).unwrap();
        let budget = SearchBudget { max_sets: 2, max_yield: 6, node_budget: None };
        let r = enumerate_derivations(&g, &budget, None).unwrap();
        assert_eq!(r.derivations.len(), 2);
        assert!(!r.exhausted);
    }

    #[test]
    fn node_budget_cut_reports_not_exhausted() {
        let g = parse_grammar(ANBN).unwrap();
        let budget = SearchBudget { max_sets: 10, max_yield: 6, node_budget: Some(3) };
        assert!(!enumerate_derivations(&g, &budget, None).unwrap().exhausted);
    }

    #[test]
    fn non_lexicalized_rejected() {
        let g = parse_grammar(ANBN).unwrap();
        assert_eq!(recognize(&g, &toks("a b")), Err(SearchError::NotLexicalized("anbn".into())));
        assert!(generate_language(&g, 4).is_err());
    }

    #[test]
    fn obligatory_adjunction_is_enforced() {
        let g = parse_grammar("grammar oa\nstart S\ntree alpha initial (S@oa eps)\ntree beta auxiliary (S 'a S* 'b)\n")
            .unwrap();
        let budget = SearchBudget { max_sets: 10, max_yield: 4, node_budget: None };
        let r = enumerate_derivations(&g, &budget, None).unwrap();
        let yields: Vec<String> = r.derivations.iter().map(|d| join_tokens(&replay(&g, d).unwrap().tokens())).collect();
        assert_eq!(yields, ["a b", "a a b b"]);
    }

    #[test]
    fn tree_local_sets_are_found() {
        let g = parse_grammar(
            "grammar mc\nstart S\n\
             tree host initial (S (N!) (VP 'v0))\n\
             set pair anchor 'x\n  component a initial (N 'x)\n  component b auxiliary (S 'y S*)\n",
        )
        .unwrap();
        let r = recognize(&g, &toks("y x v0")).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.edges.len(), 1);
        assert_eq!(w.edges[0].components.len(), 2);
        assert!(!recognize(&g, &toks("x y v0")).unwrap().recognized);
    }
}
