//! The `.mcg` grammar file format.
//!
//! ```text
//! grammar <ident>
//! start <Nonterminal>
//! tree <ident> initial|auxiliary <s-expr>
//! set <ident> [anchor '<token>]
//!   component <ident> initial|auxiliary <s-expr>
//! ```
//!
//! Node syntax: `(Label child ...)` internal, `Label@na` / `Label@oa` for
//! constrained internal heads, `Label!` substitution slot, `Label*` foot,
//! `'token` terminal, `eps` empty leaf. Slots and feet may also be written
//! in parentheses, as in `(NP!)`. `#` starts a comment running to the end of
//! the line.

use thiserror::Error;

use crate::grammar::{validate_grammar, ElementarySet, Grammar, Violation, ViolationKind};
use crate::symbol::{Label, Token};
use crate::tree::{write_sexpr, Constraint, ElementaryTree, Head, Node, TreeClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{}{violation}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Invalid { line: Option<usize>, violation: Violation },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
}

impl GrammarError {
    pub fn violation_kind(&self) -> Option<ViolationKind> {
        match self {
            GrammarError::Invalid { violation, .. } => Some(violation.kind),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Word(String),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Vec<Spanned> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<(usize, char)> = line.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (_, c) = chars[i];
            let column = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c == '#' {
                break;
            } else if c == '(' || c == ')' {
                let tok = if c == '(' { Tok::Open } else { Tok::Close };
                out.push(Spanned { tok, line: li + 1, column });
                i += 1;
            } else {
                let start = i;
                while i < chars.len() {
                    let c = chars[i].1;
                    if c.is_whitespace() || c == '(' || c == ')' {
                        break;
                    }
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push(Spanned { tok: Tok::Word(word), line: li + 1, column });
            }
        }
    }
    out
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

type PResult<T> = Result<T, GrammarError>;

impl Parser {
    fn new(text: &str) -> Self {
        let lines = text.lines().count();
        let last = text.lines().last().map_or(0, |l| l.chars().count());
        Parser { toks: lex(text), pos: 0, end: (lines.max(1), last + 1) }
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        let (line, column) = self.here();
        Err(GrammarError::Syntax { line, column, message: message.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_word(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn word(&mut self, what: &str) -> PResult<String> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            Some(_) => self.err(format!("expected {what}, found parenthesis")),
            None => self.err(format!("expected {what}, found end of input")),
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        let w = self.word(what)?;
        if let Err(e) = crate::symbol::check_symbol(&w) {
            self.pos -= 1;
            return self.err(format!("invalid {what}: {e}"));
        }
        Ok(w)
    }

    fn label(&mut self, raw: &str) -> PResult<Label> {
        Label::new(raw).or_else(|e| self.err(format!("invalid label: {e}")))
    }

    fn class(&mut self) -> PResult<TreeClass> {
        match self.word("tree class")?.as_str() {
            "initial" => Ok(TreeClass::Initial),
            "auxiliary" => Ok(TreeClass::Auxiliary),
            other => {
                self.pos -= 1;
                self.err(format!("expected `initial` or `auxiliary`, found `{other}`"))
            }
        }
    }

    fn leaf_from_word(&mut self, w: &str) -> PResult<Option<Head>> {
        if w == "eps" {
            return Ok(Some(Head::Epsilon));
        }
        if let Some(t) = w.strip_prefix('\'') {
            return Token::new(t).map(|t| Some(Head::Leaf(t))).or_else(|e| self.err(format!("invalid token: {e}")));
        }
        if let Some(l) = w.strip_suffix('!') {
            return Ok(Some(Head::Slot(self.label(l)?)));
        }
        if let Some(l) = w.strip_suffix('*') {
            return Ok(Some(Head::Foot(self.label(l)?)));
        }
        Ok(None)
    }

    fn node(&mut self) -> PResult<Node> {
        match self.peek().cloned() {
            None => self.err("expected a tree, found end of input"),
            Some(Tok::Close) => self.err("unexpected `)`"),
            Some(Tok::Word(w)) => match self.leaf_from_word(&w)? {
                Some(head) => {
                    self.pos += 1;
                    Ok(Node::leaf(head))
                }
                None => self.err(format!("bare label `{w}`: write `({w} ...)`, `{w}!` or `{w}*`")),
            },
            Some(Tok::Open) => {
                self.pos += 1;
                let head_word = match self.peek() {
                    Some(Tok::Word(w)) => w.clone(),
                    _ => return self.err("expected a node label after `(`"),
                };
                if head_word.starts_with('\'') {
                    return self.err("a terminal cannot head a subtree");
                }
                if let Some(head) = self.leaf_from_word(&head_word)? {
                    self.pos += 1;
                    if self.peek() != Some(&Tok::Close) {
                        return self.err("leaf nodes cannot have children");
                    }
                    self.pos += 1;
                    return Ok(Node::leaf(head));
                }
                let (raw, constraint) = if let Some(l) = head_word.strip_suffix("@na") {
                    (l, Constraint::Null)
                } else if let Some(l) = head_word.strip_suffix("@oa") {
                    (l, Constraint::Obligatory)
                } else {
                    (head_word.as_str(), Constraint::Allowed)
                };
                let label = self.label(raw)?;
                self.pos += 1;
                let mut children = Vec::new();
                loop {
                    match self.peek() {
                        Some(Tok::Close) => {
                            self.pos += 1;
                            break;
                        }
                        None => return self.err("unclosed `(`"),
                        _ => children.push(self.node()?),
                    }
                }
                if children.is_empty() {
                    return self.err(format!("internal node {label} has no children"));
                }
                Ok(Node::internal(label, constraint, children))
            }
        }
    }

    fn tree_body(&mut self, name: String) -> PResult<ElementaryTree> {
        let class = self.class()?;
        if self.peek() != Some(&Tok::Open) {
            return self.err("a tree must start with `(`");
        }
        let root = self.node()?;
        Ok(ElementaryTree { name, class, root })
    }
}

struct Raw {
    name: Option<String>,
    start: Option<Label>,
    sets: Vec<ElementarySet>,
    lines: Vec<usize>,
}

fn parse_raw(text: &str) -> PResult<Raw> {
    let mut p = Parser::new(text);
    let mut raw = Raw { name: None, start: None, sets: Vec::new(), lines: Vec::new() };
    while let Some(tok) = p.peek().cloned() {
        let line = p.here().0;
        let kw = match tok {
            Tok::Word(w) => w,
            _ => return p.err("expected a keyword"),
        };
        p.pos += 1;
        match kw.as_str() {
            "grammar" => {
                if raw.name.is_some() {
                    p.pos -= 1;
                    return p.err("duplicate `grammar` header");
                }
                raw.name = Some(p.ident("grammar name")?);
            }
            "start" => {
                if raw.start.is_some() {
                    p.pos -= 1;
                    return p.err("duplicate `start` header");
                }
                let w = p.word("start symbol")?;
                raw.start = Some(p.label(&w)?);
            }
            "tree" => {
                let name = p.ident("tree name")?;
                let tree = p.tree_body(name)?;
                raw.sets.push(ElementarySet::singleton(tree));
                raw.lines.push(line);
            }
            "set" => {
                let name = p.ident("set name")?;
                let mut anchor = None;
                if p.peek_word() == Some("anchor") {
                    p.pos += 1;
                    let w = p.word("anchor token")?;
                    match w.strip_prefix('\'').map(Token::new) {
                        Some(Ok(t)) => anchor = Some(t),
                        _ => {
                            p.pos -= 1;
                            return p.err("anchor must be a quoted token such as 'v1");
                        }
                    }
                }
                let mut components = Vec::new();
                while p.peek_word() == Some("component") {
                    p.pos += 1;
                    let cname = p.ident("component name")?;
                    components.push(p.tree_body(cname)?);
                }
                if components.is_empty() {
                    return p.err(format!("set {name} has no components"));
                }
                raw.sets.push(ElementarySet { name, components, anchor });
                raw.lines.push(line);
            }
            other => {
                p.pos -= 1;
                return p.err(format!("unknown keyword `{other}`"));
            }
        }
    }
    Ok(raw)
}

/// Parses without checking grammar invariants (headers are still required).
pub fn parse_grammar_unchecked(text: &str) -> Result<Grammar, GrammarError> {
    let raw = parse_raw(text)?;
    let name = raw.name.ok_or(GrammarError::MissingHeader("grammar"))?;
    let start = raw.start.ok_or(GrammarError::MissingHeader("start"))?;
    Ok(Grammar { name, start, sets: raw.sets })
}

/// Parses and validates a grammar file.
pub fn parse_grammar(text: &str) -> Result<Grammar, GrammarError> {
    let raw = parse_raw(text)?;
    let provisional = Grammar {
        name: raw.name.clone().unwrap_or_default(),
        start: raw.start.clone().unwrap_or_else(|| Label::new("S").expect("valid label")),
        sets: raw.sets.clone(),
    };
    let violations = validate_grammar(&provisional);
    let line_of =
        |v: &Violation| v.set.as_ref().and_then(|s| raw.sets.iter().position(|x| &x.name == s)).map(|i| raw.lines[i]);
    if let Some(v) = violations.iter().find(|v| v.kind != ViolationKind::NoStartTree) {
        return Err(GrammarError::Invalid { line: line_of(v), violation: v.clone() });
    }
    let name = raw.name.ok_or(GrammarError::MissingHeader("grammar"))?;
    let start = raw.start.ok_or(GrammarError::MissingHeader("start"))?;
    if let Some(v) = violations.into_iter().next() {
        return Err(GrammarError::Invalid { line: None, violation: v });
    }
    Ok(Grammar { name, start, sets: raw.sets })
}

/// Parses a single s-expression tree.
pub fn parse_tree(text: &str) -> Result<Node, GrammarError> {
    let mut p = Parser::new(text);
    let n = p.node()?;
    if p.peek().is_some() {
        return p.err("trailing input after tree");
    }
    Ok(n)
}

fn tree_line(out: &mut String, keyword: &str, t: &ElementaryTree) {
    out.push_str(keyword);
    out.push(' ');
    out.push_str(&t.name);
    out.push(' ');
    out.push_str(&t.class.to_string());
    out.push(' ');
    write_sexpr(&t.root, out);
    out.push('\n');
}

/// Renders a grammar in normalized `.mcg` form.
pub fn serialize_grammar(g: &Grammar) -> String {
    let mut out = format!("grammar {}\nstart {}\n", g.name, g.start);
    if !g.sets.is_empty() {
        out.push('\n');
    }
    for set in &g.sets {
        let sugar = set.anchor.is_none() && set.is_singleton() && set.components[0].name == set.name;
        if sugar {
            tree_line(&mut out, "tree", &set.components[0]);
            continue;
        }
        out.push_str("set ");
        out.push_str(&set.name);
        if let Some(a) = &set.anchor {
            out.push_str(" anchor '");
            out.push_str(a.as_str());
        }
        out.push('\n');
        for c in &set.components {
            tree_line(&mut out, "  component", c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::NodeKind;

    #[test]
    fn minimal_grammar() {
        let g = parse_grammar("grammar g\nstart S\ntree t initial (S 'a)").unwrap();
        assert_eq!(g.sets.len(), 1);
        assert_eq!(g.start.as_str(), "S");
        assert_eq!(serialize_grammar(&g), "grammar g\nstart S\n\ntree t initial (S 'a)\n");
    }

    #[test]
    fn foot_in_initial_is_reported_before_missing_headers() {
        let e = parse_grammar("tree t initial (S N*)").unwrap_err();
        assert_eq!(e.violation_kind(), Some(ViolationKind::FootInInitial));
    }

    #[test]
    fn invariant_errors() {
        let cases = [
            ("tree b auxiliary (S 'a S* S*)", ViolationKind::MultipleFeet),
            ("tree b auxiliary (S 'a NP*)", ViolationKind::FootLabelMismatch),
            ("tree b initial (S 'a)\ntree b initial (S 'b)", ViolationKind::DuplicateSetName),
            ("set s anchor 'x\n component c initial (S 'y)", ViolationKind::AnchorAbsent),
        ];
        for (body, kind) in cases {
            let text = format!("grammar g\nstart S\ntree ok initial (S 'ok)\n{body}");
            assert_eq!(parse_grammar(&text).unwrap_err().violation_kind(), Some(kind), "{body}");
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_grammar("grammar g\nstart S\ntree t initial (S 'a") {
            Err(GrammarError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_grammar("grammar g\nstart S\ntree t initial (S N)") {
            Err(GrammarError::Syntax { line, column, .. }) => assert_eq!((line, column), (3, 19)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_grammar("grammar g\nstart S\ntree t bogus (S 'a)"), Err(GrammarError::Syntax { .. })));
        assert_eq!(parse_grammar("start S\ntree t initial (S 'a)"), Err(GrammarError::MissingHeader("grammar")));
    }

    #[test]
    fn node_syntax_variants() {
        let n = parse_tree("(S@oa (NP!) NP! (S* ) 'b eps (VP@na 'c))").unwrap();
        let kinds: Vec<NodeKind> = n.children.iter().map(|c| c.head.kind()).collect();
        assert_eq!(
            kinds,
            [
                NodeKind::SubstitutionSlot,
                NodeKind::SubstitutionSlot,
                NodeKind::Foot,
                NodeKind::TerminalLeaf,
                NodeKind::EpsilonLeaf,
                NodeKind::Internal
            ]
        );
        assert_eq!(n.head.constraint(), Constraint::Obligatory);
        assert_eq!(n.to_string(), "(S@oa (NP!) (NP!) S* 'b eps (VP@na 'c))");
    }

    #[test]
    fn comments_and_sets() {
        let text = "# header\ngrammar g # trailing\nstart S\ntree a initial (S 'a)\nset v anchor 'v\n  component c auxiliary (S (S S* 'v))\n  component d auxiliary (S (N!) S*)\n";
        let g = parse_grammar(text).unwrap();
        assert_eq!(g.sets[1].components.len(), 2);
        let again = parse_grammar(&serialize_grammar(&g)).unwrap();
        assert_eq!(again, g);
    }
}
