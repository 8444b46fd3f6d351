//! Command-line interface: validation, classification, realization,
//! extraction, order queries, surveys, and diagrams. Stdout carries
//! machine-readable JSON only; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 invalid input data, 2 file/parse/usage
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use pingpong::config::{ConfigDoc, ConfigDocError, Configuration};
use pingpong::diagram::render_svg;
use pingpong::freegroup::Word;
use pingpong::orders::{circular_order, linear_compare, CentralElement};
use pingpong::realize::{extract_config, realize, ActionFile, Layout};
use pingpong::search::{survey, SearchBound, DEFAULT_CEILING};
use pingpong::surface::classify;

#[derive(Parser)]
#[command(name = "pingpong", version, about = "Ping-pong actions on the circle and their orders")]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a configuration file; report all violations.
    Validate { path: PathBuf },
    /// Classify a configuration: boundary components, genus, isolation.
    Classify { path: PathBuf },
    /// Realize a configuration as an exact PL action file.
    Realize {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Layout::Standard)]
        layout: Layout,
    },
    /// Recover the configuration of an action file.
    Extract { path: PathBuf },
    /// Compare orbit points: three words for the circular order, or
    /// --linear with two "word:shift" elements for the linear order.
    Order {
        path: PathBuf,
        #[arg(long)]
        linear: bool,
        elements: Vec<String>,
    },
    /// Classify every configuration within bounds.
    Survey {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        max_k: Option<usize>,
        /// Bound on the total number of arcs.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: u128,
    },
    /// Render a configuration diagram as SVG.
    Diagram {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

const EXIT_INVALID: u8 = 1;
const EXIT_PARSE: u8 = 2;

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn emit<T: Serialize>(value: &T, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("output is serializable");
    println!("{text}");
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| fail(EXIT_PARSE, format!("malformed JSON in {}: {e}", path.display())))
}

fn load_config(path: &PathBuf) -> Result<Configuration, Failure> {
    let doc: ConfigDoc = read_json(path)?;
    doc.to_config().map_err(|e| {
        let message = match &e {
            ConfigDocError::Invalid(violations) => violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
            other => other.to_string(),
        };
        fail(EXIT_INVALID, message)
    })
}

fn parse_word(rank: usize, text: &str) -> Result<Word, Failure> {
    Word::parse(rank, text).map_err(|e| fail(EXIT_PARSE, format!("bad word {text:?}: {e}")))
}

fn parse_central(rank: usize, text: &str) -> Result<CentralElement, Failure> {
    let (word, shift) = match text.rsplit_once(':') {
        Some((w, s)) => {
            let shift: i64 = s
                .parse()
                .map_err(|_| fail(EXIT_PARSE, format!("bad central coordinate in {text:?}")))?;
            (w, shift)
        }
        None => (text, 0),
    };
    Ok(CentralElement::new(parse_word(rank, word)?, shift))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let pretty = cli.pretty;
    match cli.cmd {
        Cmd::Validate { path } => {
            let doc: ConfigDoc = read_json(&path)?;
            match doc.to_config() {
                Ok(cfg) => {
                    emit(
                        &json!({"valid": true, "word": cfg.word_string(), "arcs": cfg.arc_count()}),
                        pretty,
                    );
                    Ok(())
                }
                Err(e) => {
                    let violations: Vec<String> = match &e {
                        ConfigDocError::Invalid(vs) => vs.iter().map(|v| v.to_string()).collect(),
                        other => vec![other.to_string()],
                    };
                    emit(&json!({"valid": false, "violations": violations}), pretty);
                    Err(fail(EXIT_INVALID, "invalid configuration"))
                }
            }
        }
        Cmd::Classify { path } => {
            let cfg = load_config(&path)?;
            emit(&classify(&cfg), pretty);
            Ok(())
        }
        Cmd::Realize { path, layout } => {
            let cfg = load_config(&path)?;
            let r = realize(&cfg, layout);
            eprintln!("certified expansion constant: {}", r.mu());
            emit(&ActionFile::from_action(&r.to_action()), pretty);
            Ok(())
        }
        Cmd::Extract { path } => {
            let doc: ActionFile = read_json(&path)?;
            let action = doc
                .to_action()
                .map_err(|e| fail(EXIT_INVALID, e.to_string()))?;
            let cfg = extract_config(&action).map_err(|e| fail(EXIT_INVALID, e.to_string()))?;
            emit(&ConfigDoc::from_config(&cfg), pretty);
            Ok(())
        }
        Cmd::Order {
            path,
            linear,
            elements,
        } => {
            let cfg = load_config(&path)?;
            let r = realize(&cfg, Layout::Standard);
            let value: i64 = if linear {
                if elements.len() != 2 {
                    return Err(fail(EXIT_PARSE, "--linear takes exactly two elements"));
                }
                let u = parse_central(cfg.rank(), &elements[0])?;
                let v = parse_central(cfg.rank(), &elements[1])?;
                match linear_compare(&r, &u, &v) {
                    std::cmp::Ordering::Less => -1,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => 1,
                }
            } else {
                if elements.len() != 3 {
                    return Err(fail(EXIT_PARSE, "the circular order takes exactly three words"));
                }
                let g1 = parse_word(cfg.rank(), &elements[0])?;
                let g2 = parse_word(cfg.rank(), &elements[1])?;
                let g3 = parse_word(cfg.rank(), &elements[2])?;
                circular_order(&r, &g1, &g2, &g3) as i64
            };
            emit(&json!({"value": value}), pretty);
            Ok(())
        }
        Cmd::Survey {
            rank,
            max_k,
            bound,
            ceiling,
        } => {
            if rank < 2 {
                return Err(fail(EXIT_INVALID, "rank must be at least 2"));
            }
            if max_k.is_none() && bound.is_none() {
                return Err(fail(EXIT_PARSE, "give --max-k and/or --bound"));
            }
            let b = SearchBound {
                rank,
                max_k,
                max_m: bound,
                ceiling,
            };
            let report = survey(&b).map_err(|e| fail(EXIT_INVALID, e.to_string()))?;
            emit(&report, pretty);
            Ok(())
        }
        Cmd::Diagram { path, out } => {
            let cfg = load_config(&path)?;
            let svg = render_svg(&cfg);
            std::fs::write(&out, &svg)
                .map_err(|e| fail(EXIT_PARSE, format!("cannot write {}: {e}", out.display())))?;
            emit(
                &json!({"out": out.display().to_string(), "arcs": cfg.arc_count(), "bytes": svg.len()}),
                pretty,
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
