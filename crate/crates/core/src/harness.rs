//! The center-embedding and scrambling experiments, the co-occurrence check,
//! and report rendering.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::compose::{replay, ComposeError, DerivationTree, OccurrenceId};
use crate::grammar::{Grammar, SizeBound};
use crate::phenomena::{center_sentence, indexed, EmbeddingDepth, Permutation, ScramblingInstance, MAX_CENTER_DEPTH};
use crate::search::{find_witness, SearchError};
use crate::symbol::{join_tokens, Token};

/// Deepest scrambling matrix the harness computes.
pub const MAX_MATRIX_DEPTH: usize = 3;
/// Deepest center-embedding scan.
pub const MAX_SCAN_DEPTH: usize = 5;

pub const MATRIX_CSV_HEADER: &str =
    "depth,permutation,string,string_derivable,cooccurrence_derivable,witness_size,exhausted";
pub const PROPERTY_CSV_HEADER: &str = "grammar,property,depth,outcome,crash_depth";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("{what} {value} is out of range (maximum {max})")]
    DepthOutOfRange { what: &'static str, value: usize, max: usize },
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("derivation cannot be replayed: {0}")]
    Compose(#[from] ComposeError),
    #[error("derivation yields \"{found}\", instance is \"{expected}\"")]
    YieldMismatch { expected: String, found: String },
    #[error("no occurrence of noun n{0} in the derivation")]
    MissingNoun(usize),
    #[error("{0} result(s) are not exhaustive; pass allow_partial to report them anyway")]
    Partial(usize),
    #[error("{0} reports cannot be rendered as DOT witnesses")]
    NoWitnesses(&'static str),
}

/// Where one noun of a scrambling instance attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NounAttachment {
    pub noun: usize,
    /// Set occurrence the noun's set attached into: (set name, occurrence id).
    pub parent: Option<(String, OccurrenceId)>,
    /// Index `j` of the `v<j>` anchoring that parent set, if any.
    pub verb: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooccurrenceVerdict {
    pub attachments: Vec<NounAttachment>,
    pub ok: bool,
}

fn noun_attachments(g: &Grammar, d: &DerivationTree, n: usize) -> Result<Vec<NounAttachment>, HarnessError> {
    let anchor_index =
        |set: &str, prefix: char| g.set(set).and_then(|(_, s)| s.lexical_anchor()).and_then(|t| indexed(&t, prefix));
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let occ = if anchor_index(&d.root.set, 'n') == Some(i) {
            Some(d.root.id)
        } else {
            d.edges.iter().find(|e| anchor_index(&e.set, 'n') == Some(i)).map(|e| e.id())
        };
        let occ = occ.ok_or(HarnessError::MissingNoun(i))?;
        let parent = d.parent_set_of(occ);
        let verb = parent.as_ref().and_then(|(set, _)| anchor_index(set, 'v'));
        out.push(NounAttachment { noun: i, parent, verb });
    }
    Ok(out)
}

fn verdict(attachments: Vec<NounAttachment>) -> CooccurrenceVerdict {
    let ok = attachments.iter().all(|a| a.verb == Some(a.noun));
    CooccurrenceVerdict { attachments, ok }
}

/// Checks that every noun `n<i>` is composed into the set anchored by `v<i>`.
/// The derivation is replayed first and must yield the instance's string.
pub fn check_cooccurrence(
    g: &Grammar,
    d: &DerivationTree,
    inst: &ScramblingInstance,
) -> Result<CooccurrenceVerdict, HarnessError> {
    let expected = inst.tokens();
    let found = replay(g, d)?.tokens();
    if found != expected {
        return Err(HarnessError::YieldMismatch { expected: join_tokens(&expected), found: join_tokens(&found) });
    }
    Ok(verdict(noun_attachments(g, d, inst.depth.verbs())?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRow {
    pub perm: Permutation,
    pub string: Vec<Token>,
    pub string_derivable: bool,
    pub cooccurrence_derivable: bool,
    pub witness: Option<DerivationTree>,
    pub exhausted: bool,
}

impl MatrixRow {
    /// Number of set occurrences in the co-occurrence witness.
    pub fn witness_size(&self) -> Option<usize> {
        self.witness.as_ref().map(DerivationTree::set_count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivabilityMatrix {
    pub grammar: String,
    pub depth: EmbeddingDepth,
    pub rows: Vec<MatrixRow>,
}

impl DerivabilityMatrix {
    pub fn all_exhausted(&self) -> bool {
        self.rows.iter().all(|r| r.exhausted)
    }

    pub fn cooccurrence_count(&self) -> usize {
        self.rows.iter().filter(|r| r.cooccurrence_derivable).count()
    }

    pub fn string_count(&self) -> usize {
        self.rows.iter().filter(|r| r.string_derivable).count()
    }
}

fn matrix_row(g: &Grammar, depth: EmbeddingDepth, perm: Permutation) -> Result<MatrixRow, HarnessError> {
    let inst = ScramblingInstance::new(depth, perm).expect("permutation length matches depth");
    let string = inst.tokens();
    let plain = find_witness(g, &string, |_| true)?;
    let n = depth.verbs();
    let cooc = if plain.witness.is_some() {
        find_witness(g, &string, |d| noun_attachments(g, d, n).map(verdict).is_ok_and(|v| v.ok))?
    } else {
        plain.clone()
    };
    Ok(MatrixRow {
        perm: inst.perm,
        string,
        string_derivable: plain.witness.is_some(),
        cooccurrence_derivable: cooc.witness.is_some() && plain.witness.is_some(),
        witness: if plain.witness.is_some() { cooc.witness } else { None },
        exhausted: plain.exhausted && cooc.exhausted,
    })
}

/// Derivability of every scrambled order at `depth`, rows in lexicographic
/// permutation order. Rows are computed in parallel when the `parallel`
/// feature is on.
pub fn scramble_matrix(g: &Grammar, depth: EmbeddingDepth) -> Result<DerivabilityMatrix, HarnessError> {
    if depth.0 > MAX_MATRIX_DEPTH {
        return Err(HarnessError::DepthOutOfRange { what: "matrix depth", value: depth.0, max: MAX_MATRIX_DEPTH });
    }
    if g.size_bound() == SizeBound::Unbounded {
        return Err(SearchError::NotLexicalized(g.name.clone()).into());
    }
    let perms = Permutation::all(depth.verbs());
    #[cfg(feature = "parallel")]
    let rows = {
        use rayon::prelude::*;
        perms.into_par_iter().map(|p| matrix_row(g, depth, p)).collect::<Result<Vec<_>, _>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let rows = perms.into_iter().map(|p| matrix_row(g, depth, p)).collect::<Result<Vec<_>, _>>()?;
    Ok(DerivabilityMatrix { grammar: g.name.clone(), depth, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    /// Bounded center embedding.
    P,
    /// Scrambling with co-occurrence up to a bounded depth.
    Q,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::P => "P",
            Property::Q => "Q",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthOutcome {
    pub depth: usize,
    pub outcome: bool,
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub grammar: String,
    pub outcomes: Vec<DepthOutcome>,
    pub crash_depth: Option<usize>,
}

impl PropertyReport {
    pub fn new(property: Property, grammar: impl Into<String>, mut outcomes: Vec<DepthOutcome>) -> Self {
        outcomes.sort_by_key(|o| o.depth);
        let crash_depth = outcomes.iter().find(|o| !o.outcome).map(|o| o.depth);
        PropertyReport { property, grammar: grammar.into(), outcomes, crash_depth }
    }

    /// Property Q summary: a depth succeeds when every order there has a
    /// co-occurrence witness.
    pub fn from_matrices(matrices: &[DerivabilityMatrix]) -> Self {
        let grammar = matrices.first().map(|m| m.grammar.clone()).unwrap_or_default();
        let outcomes = matrices
            .iter()
            .map(|m| DepthOutcome {
                depth: m.depth.0,
                outcome: m.rows.iter().all(|r| r.cooccurrence_derivable),
                exhausted: m.all_exhausted(),
            })
            .collect();
        PropertyReport::new(Property::Q, grammar, outcomes)
    }

    pub fn all_exhausted(&self) -> bool {
        self.outcomes.iter().all(|o| o.exhausted)
    }
}

/// Recognizes `center_sentence(k)` for `k = 0..=max_depth`.
pub fn center_embed_scan(g: &Grammar, max_depth: usize) -> Result<PropertyReport, HarnessError> {
    if max_depth > MAX_SCAN_DEPTH.min(MAX_CENTER_DEPTH) {
        return Err(HarnessError::DepthOutOfRange { what: "scan depth", value: max_depth, max: MAX_SCAN_DEPTH });
    }
    let outcomes = (0..=max_depth)
        .map(|k| {
            let s = center_sentence(k).expect("depth checked");
            let w = find_witness(g, &s, |_| true)?;
            Ok(DepthOutcome { depth: k, outcome: w.witness.is_some(), exhausted: w.exhausted })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    Ok(PropertyReport::new(Property::P, g.name.clone(), outcomes))
}

#[derive(Debug, Clone, Copy)]
pub enum Report<'a> {
    Matrix(&'a DerivabilityMatrix),
    Property(&'a PropertyReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Text,
    DotWitnesses,
}

/// One rendered file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub content: String,
}

/// Renders a report. CSV and text give one artifact; DOT gives one per
/// co-occurrence witness. Non-exhaustive results are refused unless
/// `allow_partial` is set.
pub fn emit_report(
    report: Report<'_>,
    format: ReportFormat,
    allow_partial: bool,
) -> Result<Vec<Artifact>, HarnessError> {
    let partial = match report {
        Report::Matrix(m) => m.rows.iter().filter(|r| !r.exhausted).count(),
        Report::Property(p) => p.outcomes.iter().filter(|o| !o.exhausted).count(),
    };
    if partial > 0 && !allow_partial {
        return Err(HarnessError::Partial(partial));
    }
    match (report, format) {
        (Report::Matrix(m), ReportFormat::Csv) => {
            Ok(vec![Artifact { name: format!("{}_depth{}.csv", m.grammar, m.depth), content: matrix_csv(m) }])
        }
        (Report::Matrix(m), ReportFormat::Text) => {
            Ok(vec![Artifact { name: format!("{}_depth{}.txt", m.grammar, m.depth), content: matrix_text(m) }])
        }
        (Report::Matrix(m), ReportFormat::DotWitnesses) => Ok(m
            .rows
            .iter()
            .filter_map(|r| {
                let w = r.witness.as_ref()?;
                let stem = format!("depth{}_{}", m.depth, r.perm);
                Some(Artifact { name: format!("{stem}.dot"), content: w.to_dot(&stem) })
            })
            .collect()),
        (Report::Property(p), ReportFormat::Csv) => {
            Ok(vec![Artifact { name: format!("{}_{}.csv", p.grammar, p.property), content: property_csv(p) }])
        }
        (Report::Property(p), ReportFormat::Text) => {
            Ok(vec![Artifact { name: format!("{}_{}.txt", p.grammar, p.property), content: property_text(p) }])
        }
        (Report::Property(_), ReportFormat::DotWitnesses) => Err(HarnessError::NoWitnesses("property")),
    }
}

fn matrix_csv(m: &DerivabilityMatrix) -> String {
    let mut out = format!("{MATRIX_CSV_HEADER}\n");
    for r in &m.rows {
        let size = r.witness_size().map(|s| s.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            m.depth,
            r.perm,
            join_tokens(&r.string),
            r.string_derivable,
            r.cooccurrence_derivable,
            size,
            r.exhausted
        );
    }
    out
}

fn property_csv(p: &PropertyReport) -> String {
    let crash = p.crash_depth.map(|c| c.to_string()).unwrap_or_default();
    let mut out = format!("{PROPERTY_CSV_HEADER}\n");
    for o in &p.outcomes {
        let _ = writeln!(out, "{},{},{},{},{}", p.grammar, p.property, o.depth, o.outcome, crash);
    }
    out
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for r in rows {
        out += &line(r);
    }
    out
}

fn matrix_text(m: &DerivabilityMatrix) -> String {
    let rows: Vec<Vec<String>> = m
        .rows
        .iter()
        .map(|r| {
            vec![
                r.perm.to_string(),
                join_tokens(&r.string),
                r.string_derivable.to_string(),
                r.cooccurrence_derivable.to_string(),
                r.witness_size().map(|s| s.to_string()).unwrap_or_else(|| "-".into()),
                r.exhausted.to_string(),
            ]
        })
        .collect();
    format!(
        "{} depth {}: {}/{} strings derivable, {}/{} with co-occurrence\n\n{}",
        m.grammar,
        m.depth,
        m.string_count(),
        m.rows.len(),
        m.cooccurrence_count(),
        m.rows.len(),
        table(&["permutation", "string", "derivable", "cooccurrence", "size", "exhausted"], &rows)
    )
}

fn property_text(p: &PropertyReport) -> String {
    let rows: Vec<Vec<String>> =
        p.outcomes.iter().map(|o| vec![o.depth.to_string(), o.outcome.to_string(), o.exhausted.to_string()]).collect();
    let crash = p.crash_depth.map_or_else(|| "none".to_string(), |c| c.to_string());
    format!(
        "property {} over {}: crash depth {}\n\n{}",
        p.property,
        p.grammar,
        crash,
        table(&["depth", "outcome", "exhausted"], &rows)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compose::{AttachmentEdge, ComponentAttachment, Occurrence, Operation};
    use crate::phenomena::{build_cfg_center_embedding, build_fsg_center_embedding, build_scrambling_fragment};

    fn inst(depth: usize, perm: &str) -> ScramblingInstance {
        ScramblingInstance::new(EmbeddingDepth(depth), perm.parse().unwrap()).unwrap()
    }

    fn sub(set: &str, id: OccurrenceId, parent: OccurrenceId, addr: &str) -> AttachmentEdge {
        AttachmentEdge {
            set: set.into(),
            components: vec![ComponentAttachment {
                occurrence: id,
                component: set.into(),
                parent,
                address: addr.parse().unwrap(),
                operation: Operation::Substitution,
            }],
        }
    }

    fn adj(set: &str, id: OccurrenceId, parent: OccurrenceId, addr: &str) -> AttachmentEdge {
        AttachmentEdge {
            set: set.into(),
            components: vec![ComponentAttachment {
                occurrence: id,
                component: set.into(),
                parent,
                address: addr.parse().unwrap(),
                operation: Operation::Adjunction,
            }],
        }
    }

    /// v2 is innermost; v1 adjoins at its root. Yield: n? n? v2 v1.
    fn depth1(n_for_v1: &str, n_for_v2: &str) -> DerivationTree {
        let mut d = DerivationTree::new(Occurrence { id: 0, set: "alpha_v2".into(), component: "alpha_v2".into() });
        d.edges.push(adj("beta_v1", 1, 0, "e"));
        d.edges.push(sub(n_for_v2, 2, 0, "1"));
        d.edges.push(sub(n_for_v1, 3, 1, "1"));
        d
    }

    #[test]
    fn cooccurrence_in_situ_and_crossed() {
        let g = build_scrambling_fragment(2).unwrap();
        let good = depth1("alpha_n1", "alpha_n2");
        let v = check_cooccurrence(&g, &good, &inst(1, "1-2")).unwrap();
        assert!(v.ok, "{v:?}");
        let crossed = depth1("alpha_n2", "alpha_n1");
        let v = check_cooccurrence(&g, &crossed, &inst(1, "2-1")).unwrap();
        assert!(!v.ok);
        assert_eq!(v.attachments[0].verb, Some(2));
        assert_eq!(v.attachments[1].verb, Some(1));
        assert!(matches!(check_cooccurrence(&g, &good, &inst(1, "2-1")), Err(HarnessError::YieldMismatch { .. })));
    }

    #[test]
    fn missing_noun_is_an_error() {
        let g = build_scrambling_fragment(2).unwrap();
        let d = depth1("alpha_n1", "alpha_n1");
        let inst = inst(1, "1-2");
        let err = noun_attachments(&g, &d, inst.depth.verbs()).unwrap_err();
        assert_eq!(err, HarnessError::MissingNoun(2));
    }

    #[test]
    fn small_matrices() {
        let g = build_scrambling_fragment(3).unwrap();
        let m0 = scramble_matrix(&g, EmbeddingDepth(0)).unwrap();
        assert_eq!(m0.rows.len(), 1);
        assert!(m0.rows[0].cooccurrence_derivable);
        let m1 = scramble_matrix(&g, EmbeddingDepth(1)).unwrap();
        assert_eq!((m1.string_count(), m1.cooccurrence_count()), (2, 2));
        assert!(m1.all_exhausted());
        for r in &m1.rows {
            let i = ScramblingInstance::new(m1.depth, r.perm.clone()).unwrap();
            assert!(check_cooccurrence(&g, r.witness.as_ref().unwrap(), &i).unwrap().ok);
        }
        assert!(scramble_matrix(&g, EmbeddingDepth(4)).is_err());
    }

    #[test]
    fn scans() {
        let p = center_embed_scan(&build_fsg_center_embedding(1).unwrap(), 3).unwrap();
        assert_eq!(p.crash_depth, Some(2));
        assert!(p.outcomes[0].outcome && p.outcomes[1].outcome);
        let p = center_embed_scan(&build_cfg_center_embedding(), 2).unwrap();
        assert_eq!(p.crash_depth, None);
        assert!(center_embed_scan(&build_cfg_center_embedding(), 6).is_err());
    }

    #[test]
    fn reports() {
        let g = build_scrambling_fragment(2).unwrap();
        let m = scramble_matrix(&g, EmbeddingDepth(1)).unwrap();
        let csv = emit_report(Report::Matrix(&m), ReportFormat::Csv, false).unwrap();
        let lines: Vec<&str> = csv[0].content.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], MATRIX_CSV_HEADER);
        assert!(lines[2].starts_with("1,2-1,n2 n1 v2 v1,true,true,"));
        let dots = emit_report(Report::Matrix(&m), ReportFormat::DotWitnesses, false).unwrap();
        assert_eq!(dots.len(), 2);
        assert_eq!(dots[1].name, "depth1_2-1.dot");
        let text = emit_report(Report::Matrix(&m), ReportFormat::Text, false).unwrap();
        assert!(text[0].content.contains("2/2 with co-occurrence"));

        let p = center_embed_scan(&build_fsg_center_embedding(1).unwrap(), 2).unwrap();
        let csv = emit_report(Report::Property(&p), ReportFormat::Csv, false).unwrap();
        assert_eq!(
            csv[0].content,
            "grammar,property,depth,outcome,crash_depth\n\
             fsg_center_m1,P,0,true,2\nfsg_center_m1,P,1,true,2\nfsg_center_m1,P,2,false,2\n"
        );
        assert!(emit_report(Report::Property(&p), ReportFormat::DotWitnesses, false).is_err());
    }

    #[test]
    fn partial_results_are_refused() {
        let mut p =
            PropertyReport::new(Property::P, "g", vec![DepthOutcome { depth: 0, outcome: false, exhausted: false }]);
        assert_eq!(emit_report(Report::Property(&p), ReportFormat::Csv, false), Err(HarnessError::Partial(1)));
        assert!(emit_report(Report::Property(&p), ReportFormat::Csv, true).is_ok());
        p.outcomes[0].exhausted = true;
        assert!(emit_report(Report::Property(&p), ReportFormat::Text, false).is_ok());
    }

    #[test]
    fn property_q_from_matrices() {
        let g = build_scrambling_fragment(3).unwrap();
        let ms: Vec<_> = (0..=2).map(|d| scramble_matrix(&g, EmbeddingDepth(d)).unwrap()).collect();
        let q = PropertyReport::from_matrices(&ms);
        assert_eq!(q.property, Property::Q);
        assert_eq!(q.crash_depth, None);
        assert_eq!(q.outcomes.len(), 3);
    }
}
