//! A workbench for tree-adjoining grammars and tree-local multi-component
//! TAGs.
//!
//! Grammars are collections of elementary tree sets ([`grammar`]), read and
//! written in the `.mcg` text format ([`format`]). Sets compose by
//! substitution and adjunction ([`compose`]); a bounded exhaustive search
//! ([`search`]) enumerates derivations, recognizes strings and looks for
//! derivations with particular shapes. [`phenomena`] builds the grammar
//! fragments for center embedding and scrambling, and [`harness`] runs the
//! embedding-depth experiments over them and writes reports.

pub mod address;
pub mod compose;
pub mod format;
pub mod grammar;
pub mod harness;
pub mod phenomena;
pub mod search;
pub mod symbol;
pub mod tree;

pub use address::GornAddress;
pub use compose::{replay, AttachmentEdge, DerivationTree, DerivedTree, Occurrence};
pub use format::{parse_grammar, serialize_grammar, GrammarError};
pub use grammar::{validate_grammar, ElementarySet, Grammar, SizeBound, Violation};
pub use search::{enumerate_derivations, find_witness, generate_language, recognize, SearchBudget, SearchResult};
pub use symbol::{Label, Token};
pub use tree::{addresses_of, node_at, yield_of, ElementaryTree, Node, NodeKind, TreeClass};
