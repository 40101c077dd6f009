//! Browser bindings. Each exported function takes plain strings or numbers
//! and returns a JSON document, so the page needs no generated glue types.

use mctag::harness::{center_embed_scan, scramble_matrix, DerivabilityMatrix, PropertyReport};
use mctag::phenomena::{
    build_cfg_center_embedding, build_fsg_center_embedding, build_scrambling_fragment, fragment_file_name,
    shipped_fragments, EmbeddingDepth, MAX_SCRAMBLING_VERBS,
};
use mctag::search::{find_witness_within, SearchBudget};
use mctag::symbol::{join_tokens, tokenize};
use mctag::{parse_grammar, replay, serialize_grammar, SizeBound};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn error(message: impl ToString) -> Value {
    json!({ "error": message.to_string() })
}

/// Parses `grammar` and looks for a derivation of `sentence`.
pub fn recognize_json(grammar: &str, sentence: &str) -> Value {
    let g = match parse_grammar(grammar) {
        Ok(g) => g,
        Err(e) => return error(e),
    };
    let s = match tokenize(sentence) {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    if g.size_bound() == SizeBound::Unbounded {
        return error(format!("grammar {} is not lexicalized; recognition is not decidable by this search", g.name));
    }
    let w = match find_witness_within(&g, &s, &SearchBudget::exact(g.size_bound(), s.len()), |_| true) {
        Ok(w) => w,
        Err(e) => return error(e),
    };
    match w.witness {
        Some(d) => match replay(&g, &d) {
            Ok(t) => json!({
                "recognized": true,
                "derived": t.to_string(),
                "derivation": d.to_dot("witness"),
                "sets": d.set_count(),
            }),
            Err(e) => error(e),
        },
        None => json!({ "recognized": false, "exhausted": w.exhausted }),
    }
}

fn matrix_json(m: &DerivabilityMatrix) -> Value {
    let rows: Vec<Value> = m
        .rows
        .iter()
        .map(|r| {
            json!({
                "permutation": r.perm.to_string(),
                "string": join_tokens(&r.string),
                "string_derivable": r.string_derivable,
                "cooccurrence_derivable": r.cooccurrence_derivable,
                "witness_size": r.witness_size(),
                "witness": r.witness.as_ref().map(|w| w.to_dot(&format!("depth{}_{}", m.depth, r.perm))),
                "exhausted": r.exhausted,
            })
        })
        .collect();
    json!({
        "grammar": m.grammar,
        "depth": m.depth.0,
        "string_count": m.string_count(),
        "cooccurrence_count": m.cooccurrence_count(),
        "rows": rows,
    })
}

/// Scrambling matrix of the built-in fragment at `depth` (0 to 3).
pub fn scramble_json(depth: usize) -> Value {
    let g = build_scrambling_fragment(MAX_SCRAMBLING_VERBS).expect("in range");
    match scramble_matrix(&g, EmbeddingDepth(depth)) {
        Ok(m) => matrix_json(&m),
        Err(e) => error(e),
    }
}

fn report_json(p: &PropertyReport) -> Value {
    let outcomes: Vec<Value> = p
        .outcomes
        .iter()
        .map(|o| json!({ "depth": o.depth, "outcome": o.outcome, "exhausted": o.exhausted }))
        .collect();
    json!({ "grammar": p.grammar, "property": p.property.to_string(), "crash_depth": p.crash_depth, "outcomes": outcomes })
}

/// Center-embedding scans of the depth-`m` finite-state grammar and the
/// recursive phrase-structure grammar, side by side.
pub fn center_embed_json(m: usize, max_depth: usize) -> Value {
    let fsg = match build_fsg_center_embedding(m) {
        Ok(g) => g,
        Err(e) => return error(e),
    };
    let scans = [fsg, build_cfg_center_embedding()].map(|g| center_embed_scan(&g, max_depth));
    match scans {
        [Ok(a), Ok(b)] => json!({ "reports": [report_json(&a), report_json(&b)] }),
        [Err(e), _] | [_, Err(e)] => error(e),
    }
}

/// The built-in fragments as `.mcg` text, keyed by file name.
pub fn fragments_json() -> Value {
    let files: serde_json::Map<String, Value> =
        shipped_fragments().iter().map(|g| (fragment_file_name(g), Value::String(serialize_grammar(g)))).collect();
    Value::Object(files)
}

#[wasm_bindgen]
pub fn recognize(grammar: &str, sentence: &str) -> String {
    recognize_json(grammar, sentence).to_string()
}

#[wasm_bindgen]
pub fn scramble(depth: usize) -> String {
    scramble_json(depth).to_string()
}

#[wasm_bindgen]
pub fn center_embed(m: usize, max_depth: usize) -> String {
    center_embed_json(m, max_depth).to_string()
}

#[wasm_bindgen]
pub fn fragments() -> String {
    fragments_json().to_string()
}
