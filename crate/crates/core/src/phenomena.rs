//! Grammar fragments and test-sentence schemata for the center-embedding and
//! scrambling experiments.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::format::parse_tree;
use crate::grammar::{ElementarySet, Grammar};
use crate::symbol::{Label, Token};
use crate::tree::{ElementaryTree, TreeClass};

/// Largest center-embedding depth the builders accept.
pub const MAX_CENTER_DEPTH: usize = 6;
/// Largest number of verbs in the scrambling fragment.
pub const MAX_SCRAMBLING_VERBS: usize = 4;

/// Animals introduced at successive embedding levels of [`center_sentence`].
pub const ANIMALS: [&str; MAX_CENTER_DEPTH] = ["cat", "dog", "cow", "fox", "pig", "hen"];
/// Relative-clause verbs, one per embedding level.
pub const RELATIVE_VERBS: [&str; MAX_CENTER_DEPTH] = ["chased", "saw", "bit", "fed", "met", "hit"];
/// Every noun the center-embedding grammars accept in a noun-phrase position.
pub const CENTER_NOUNS: [&str; 8] = ["rat", "cat", "dog", "cow", "fox", "pig", "hen", "cheese"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhenomenaError {
    #[error("{what} {value} is out of range (allowed {min}..={max})")]
    OutOfRange { what: &'static str, value: usize, min: usize, max: usize },
    #[error("not a permutation of 1..={0}: {1}")]
    NotAPermutation(usize, String),
}

fn range_check(what: &'static str, value: usize, min: usize, max: usize) -> Result<(), PhenomenaError> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(PhenomenaError::OutOfRange { what, value, min, max })
    }
}

fn tok(s: &str) -> Token {
    Token::new(s).expect("builder tokens are well formed")
}

fn tree(name: impl Into<String>, class: TreeClass, sexpr: &str) -> ElementaryTree {
    ElementaryTree { name: name.into(), class, root: parse_tree(sexpr).expect("builder trees are well formed") }
}

fn initial(name: impl Into<String>, sexpr: &str) -> ElementarySet {
    ElementarySet::singleton(tree(name, TreeClass::Initial, sexpr))
}

fn grammar(name: impl Into<String>, sets: Vec<ElementarySet>) -> Grammar {
    Grammar { name: name.into(), start: Label::new("S").expect("label"), sets }
}

/// The right-linear chain grammar for "the dog likes icecream".
pub fn build_fsg_fig1() -> Grammar {
    grammar(
        "fig1_fsg",
        vec![
            initial("s", "(S 'the (XP!))"),
            initial("xp", "(XP 'dog (YP!))"),
            initial("yp", "(YP 'likes (ZP!))"),
            initial("zp", "(ZP 'icecream)"),
        ],
    )
}

/// The phrase-structure grammar with NP and VP constituents.
pub fn build_cfg_fig2() -> Grammar {
    grammar(
        "fig2_cfg",
        vec![
            initial("s", "(S (NP!) (VP!))"),
            initial("vp", "(VP (V!) (NP!))"),
            initial("np1", "(NP (DET!) (N!))"),
            initial("np2", "(NP 'icecream)"),
            initial("det", "(DET 'the)"),
            initial("n", "(N 'dog)"),
            initial("v", "(V 'likes)"),
        ],
    )
}

/// `the rat (the <animal>)^k <verb>^k ate the cheese`, with the innermost
/// relative verb first. `center_sentence(1)` is "the rat the cat chased ate
/// the cheese".
pub fn center_sentence(k: usize) -> Result<Vec<Token>, PhenomenaError> {
    range_check("center-embedding depth", k, 0, MAX_CENTER_DEPTH)?;
    let mut out = vec![tok("the"), tok("rat")];
    for animal in &ANIMALS[..k] {
        out.push(tok("the"));
        out.push(tok(animal));
    }
    for verb in RELATIVE_VERBS[..k].iter().rev() {
        out.push(tok(verb));
    }
    out.extend(["ate", "the", "cheese"].map(tok));
    Ok(out)
}

/// Right-linear grammar accepting center-embedded sentences up to depth `m`
/// and none deeper. The embedding depth is carried by the nonterminals:
/// `N<d>` expects the noun of level `d`, `A<d>` follows it, `V<j>` still owes
/// `j` relative verbs before the main verb.
pub fn build_fsg_center_embedding(m: usize) -> Result<Grammar, PhenomenaError> {
    range_check("center-embedding bound", m, 0, MAX_CENTER_DEPTH)?;
    let mut sets = vec![initial("s", "(S 'the (N0!))")];
    for d in 0..=m {
        for noun in CENTER_NOUNS {
            sets.push(initial(format!("n{d}_{noun}"), &format!("(N{d} '{noun} (A{d}!))")));
        }
        if d < m {
            sets.push(initial(format!("a{d}_the"), &format!("(A{d} 'the (N{}!))", d + 1)));
        }
        if d == 0 {
            sets.push(initial("a0_ate", "(A0 'ate (O!))"));
        } else {
            for verb in RELATIVE_VERBS {
                sets.push(initial(format!("a{d}_{verb}"), &format!("(A{d} '{verb} (V{}!))", d - 1)));
            }
        }
    }
    for j in 0..m {
        if j == 0 {
            sets.push(initial("v0_ate", "(V0 'ate (O!))"));
        } else {
            for verb in RELATIVE_VERBS {
                sets.push(initial(format!("v{j}_{verb}"), &format!("(V{j} '{verb} (V{}!))", j - 1)));
            }
        }
    }
    sets.push(initial("o_the", "(O 'the (OBJ!))"));
    for noun in CENTER_NOUNS {
        sets.push(initial(format!("obj_{noun}"), &format!("(OBJ '{noun})")));
    }
    Ok(grammar(format!("fsg_center_m{m}"), sets))
}

/// Recursive phrase-structure grammar: a noun phrase may take an object
/// relative clause `NP -> NP RC`, `RC -> NP V`, so embedding is unbounded.
pub fn build_cfg_center_embedding() -> Grammar {
    let mut sets = vec![initial("s", "(S (NP!) (VP 'ate (NP!)))")];
    for noun in CENTER_NOUNS {
        sets.push(initial(format!("np_{noun}"), &format!("(NP (DET 'the) (N '{noun}))")));
    }
    for verb in RELATIVE_VERBS {
        sets.push(initial(format!("rc_{verb}"), &format!("(NP (NP!) (RC (NP!) (V '{verb})))")));
    }
    grammar("cfg_center", sets)
}

/// Tree-local MC-TAG for scrambling with up to `n_max` verbs.
///
/// Nouns `n<i>` are plain `N` trees. Each verb `v<i>` has three entries:
///
/// * `alpha_v<i>`: the innermost clause, `(S (N!) (S 'v<i>))`;
/// * `beta_v<i>`: an embedding clause that adjoins around its complement,
///   `(S (N!) (S S* 'v<i>))`;
/// * `mc_v<i>`: the same embedding clause without its argument, plus a second
///   component `(S (N!) S*)` carrying the argument slot, which must adjoin
///   into the same elementary tree as the clause.
///
/// Every set has exactly one `N!` slot: the argument of its verb.
pub fn build_scrambling_fragment(n_max: usize) -> Result<Grammar, PhenomenaError> {
    range_check("scrambling verb count", n_max, 1, MAX_SCRAMBLING_VERBS)?;
    let mut sets = Vec::new();
    for i in 1..=n_max {
        sets.push(initial(format!("alpha_n{i}"), &format!("(N 'n{i})")));
    }
    for i in 1..=n_max {
        let v = format!("v{i}");
        sets.push(initial(format!("alpha_{v}"), &format!("(S (N!) (S '{v}))")));
        sets.push(ElementarySet::singleton(tree(
            format!("beta_{v}"),
            TreeClass::Auxiliary,
            &format!("(S (N!) (S S* '{v}))"),
        )));
        sets.push(ElementarySet {
            name: format!("mc_{v}"),
            components: vec![
                tree("clause", TreeClass::Auxiliary, &format!("(S (S S* '{v}))")),
                tree("arg", TreeClass::Auxiliary, "(S (N!) S*)"),
            ],
            anchor: Some(tok(&v)),
        });
    }
    Ok(grammar(format!("scrambling_n{n_max}"), sets))
}

/// Number of embedded clauses below the matrix clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmbeddingDepth(pub usize);

impl EmbeddingDepth {
    /// Verbs (and argument nouns) in an instance of this depth.
    pub fn verbs(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for EmbeddingDepth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A bijection on `1..=n`, stored as the image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PhenomenaError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(PhenomenaError::NotAPermutation(n, format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation(cur.clone()));
                return;
            }
            for i in 1..=n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    go(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("-"))
    }
}

impl FromStr for Permutation {
    type Err = PhenomenaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let images = s
            .split(['-', ','])
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PhenomenaError::NotAPermutation(0, s.to_string()))?;
        Permutation::new(images)
    }
}

/// One scrambled string: nouns in permuted order, verbs clause-final with
/// the most deeply embedded verb first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScramblingInstance {
    pub depth: EmbeddingDepth,
    pub perm: Permutation,
}

impl ScramblingInstance {
    pub fn new(depth: EmbeddingDepth, perm: Permutation) -> Result<Self, PhenomenaError> {
        if perm.len() != depth.verbs() {
            return Err(PhenomenaError::NotAPermutation(depth.verbs(), perm.to_string()));
        }
        Ok(ScramblingInstance { depth, perm })
    }

    pub fn tokens(&self) -> Vec<Token> {
        scrambling_string(self)
    }
}

/// `[n_{perm(1)}, ..., n_{perm(n)}, v_n, ..., v_1]`.
pub fn scrambling_string(inst: &ScramblingInstance) -> Vec<Token> {
    let n = inst.depth.verbs();
    let nouns = inst.perm.images().iter().map(|i| tok(&format!("n{i}")));
    let verbs = (1..=n).rev().map(|i| tok(&format!("v{i}")));
    nouns.chain(verbs).collect()
}

/// Index `i` of a token `<prefix><i>`, e.g. `n3` with prefix `n`.
pub fn indexed(token: &Token, prefix: char) -> Option<usize> {
    let rest = token.as_str().strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

/// Every builder output, in the order of the shipped `.mcg` files.
pub fn shipped_fragments() -> Vec<Grammar> {
    vec![
        build_fsg_fig1(),
        build_cfg_fig2(),
        build_fsg_center_embedding(1).expect("in range"),
        build_fsg_center_embedding(2).expect("in range"),
        build_cfg_center_embedding(),
        build_scrambling_fragment(MAX_SCRAMBLING_VERBS).expect("in range"),
    ]
}

/// File name a fragment is shipped under.
pub fn fragment_file_name(g: &Grammar) -> String {
    format!("{}.mcg", g.name)
}
