use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use mctag::harness::{center_embed_scan, emit_report, scramble_matrix, Artifact, PropertyReport, Report, ReportFormat};
use mctag::phenomena::{fragment_file_name, shipped_fragments, EmbeddingDepth};
use mctag::search::{enumerate_derivations, find_witness_within, generate_language, SearchBudget};
use mctag::symbol::{join_tokens, tokenize};
use mctag::{parse_grammar, replay, serialize_grammar, Grammar, SizeBound};

/// Tree-adjoining grammar workbench: recognition, generation and the
/// embedding-depth experiments.
#[derive(Parser)]
#[command(name = "mctag", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a string is in the grammar's language (exit 1 if not).
    Recognize {
        #[arg(long)]
        grammar: PathBuf,
        /// Space-separated tokens.
        #[arg(long)]
        string: String,
        /// Write the witness derivation tree as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print every derivation of a string.
    Derive {
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long)]
        string: String,
        /// Write one DOT file per derivation into this directory.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
        /// Set-count limit; required for grammars whose derivation size is unbounded.
        #[arg(long)]
        max_sets: Option<usize>,
    },
    /// List the language up to a length bound.
    Generate {
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long)]
        max_len: usize,
        /// Set-count limit; required for grammars whose derivation size is unbounded.
        #[arg(long)]
        max_sets: Option<usize>,
    },
    /// Derivability of every scrambled order at one embedding depth.
    ScrambleMatrix {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write one DOT file per co-occurrence witness.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
        /// Report rows whose search was cut short.
        #[arg(long)]
        allow_partial: bool,
    },
    /// Recognize center-embedded sentences of increasing depth.
    CenterEmbed {
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long)]
        max_depth: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        allow_partial: bool,
    },
    /// Check a grammar file for well-formedness.
    Validate {
        #[arg(long)]
        grammar: PathBuf,
    },
    /// Write the built-in grammar fragments as .mcg files.
    ExportFragments {
        #[arg(long)]
        dir: PathBuf,
    },
}

fn load(path: &Path) -> Result<Grammar> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_grammar(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for a in artifacts {
        let p = dir.join(&a.name);
        fs::write(&p, &a.content).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).with_context(|| format!("writing {}", path.display()))
}

fn budget(g: &Grammar, n: usize, max_sets: Option<usize>) -> Result<SearchBudget> {
    match (g.size_bound(), max_sets) {
        (_, Some(k)) => Ok(SearchBudget { max_sets: k, max_yield: n, node_budget: None }),
        (SizeBound::Unbounded, None) => {
            bail!("grammar {} is not lexicalized; pass --max-sets to bound the search", g.name)
        }
        (bound, None) => Ok(SearchBudget::exact(bound, n)),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Recognize { grammar, string, dot } => {
            let g = load(&grammar)?;
            let s = tokenize(&string)?;
            let b = budget(&g, s.len(), None)?;
            let w = find_witness_within(&g, &s, &b, |_| true)?;
            match w.witness {
                Some(d) => {
                    println!("recognized");
                    println!("{}", replay(&g, &d)?);
                    if let Some(p) = dot {
                        write_file(&p, &d.to_dot("witness"))?;
                    }
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not recognized");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Derive { grammar, string, dot_dir, max_sets } => {
            let g = load(&grammar)?;
            let s = tokenize(&string)?;
            let r = enumerate_derivations(&g, &budget(&g, s.len(), max_sets)?, Some(&s))?;
            println!("{} derivation(s){}", r.derivations.len(), if r.exhausted { "" } else { " (search cut short)" });
            let mut dots = Vec::new();
            for (i, d) in r.derivations.iter().enumerate() {
                println!("[{i}] {}", replay(&g, d)?);
                dots.push(Artifact {
                    name: format!("derivation{i}.dot"),
                    content: d.to_dot(&format!("derivation{i}")),
                });
            }
            if let Some(dir) = dot_dir {
                write_artifacts(&dir, &dots)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate { grammar, max_len, max_sets } => {
            let g = load(&grammar)?;
            match max_sets {
                None => {
                    for s in generate_language(&g, max_len)? {
                        println!("{}", join_tokens(&s));
                    }
                }
                Some(_) => {
                    let r = enumerate_derivations(&g, &budget(&g, max_len, max_sets)?, None)?;
                    let mut yields: Vec<_> =
                        r.derivations.iter().map(|d| replay(&g, d).map(|t| t.tokens())).collect::<Result<_, _>>()?;
                    yields.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                    yields.dedup();
                    for s in yields {
                        println!("{}", join_tokens(&s));
                    }
                    if !r.exhausted {
                        eprintln!("warning: search cut short by --max-sets; the list may be incomplete");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ScrambleMatrix { depth, grammar, csv, dot_dir, allow_partial } => {
            let g = load(&grammar)?;
            let m = scramble_matrix(&g, EmbeddingDepth(depth))?;
            let text = emit_report(Report::Matrix(&m), ReportFormat::Text, allow_partial)?;
            print!("{}", text[0].content);
            if let Some(p) = csv {
                let out = emit_report(Report::Matrix(&m), ReportFormat::Csv, allow_partial)?;
                write_file(&p, &out[0].content)?;
            }
            if let Some(dir) = dot_dir {
                write_artifacts(&dir, &emit_report(Report::Matrix(&m), ReportFormat::DotWitnesses, allow_partial)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CenterEmbed { grammar, max_depth, csv, allow_partial } => {
            let g = load(&grammar)?;
            let p: PropertyReport = center_embed_scan(&g, max_depth)?;
            print!("{}", emit_report(Report::Property(&p), ReportFormat::Text, allow_partial)?[0].content);
            if let Some(path) = csv {
                write_file(&path, &emit_report(Report::Property(&p), ReportFormat::Csv, allow_partial)?[0].content)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { grammar } => {
            let g = load(&grammar)?;
            let kind = match g.size_bound() {
                SizeBound::Lexical => "lexicalized",
                SizeBound::Branching => "not lexicalized, derivation size bounded",
                SizeBound::Unbounded => "not lexicalized",
            };
            println!("{}: {} sets, {}", g.name, g.sets.len(), kind);
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportFragments { dir } => {
            let files: Vec<Artifact> = shipped_fragments()
                .iter()
                .map(|g| Artifact { name: fragment_file_name(g), content: serialize_grammar(g) })
                .collect();
            write_artifacts(&dir, &files)?;
            for f in &files {
                println!("{}", dir.join(&f.name).display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
