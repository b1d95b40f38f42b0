//! `metapoisson`: decide equalities in finitely presented metabelian
//! Poisson algebras from the command line.
//!
//! Exit codes: 0 success or a positive answer, 1 a negative answer, 2 a
//! usage, input or parse error, 3 a completion limit was exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use metapoisson::algebra::{parse_expr, Poly};
use metapoisson::coeff::FieldSpec;
use metapoisson::decide::{
    check_automorphism, parse_document, Document, Membership, NotAutomorphism, Verdict,
};
use metapoisson::gsb::{CompletionError, GsbBasis, Limits, ReduceMode};
use metapoisson::oracle::verify_axioms;

#[derive(Parser)]
#[command(
    name = "metapoisson",
    version,
    about = "Word problem for metabelian Poisson algebras"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LimitArgs {
    /// Abort completion beyond this many relations.
    #[arg(long)]
    max_relations: Option<usize>,
    /// Abort completion when a leading monomial is longer than this.
    #[arg(long)]
    max_len: Option<usize>,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_relations: self.max_relations.unwrap_or(d.max_relations),
            max_leading_len: self.max_len.unwrap_or(d.max_leading_len),
            ..d
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical form of an expression.
    Normalize { file: PathBuf, expr: String },
    /// Print a Gröbner–Shirshov basis of the relations.
    Complete {
        file: PathBuf,
        /// Drop redundant relations and reduce tails.
        #[arg(long)]
        minimal: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Reduce an expression modulo the completed relations.
    Reduce {
        file: PathBuf,
        expr: String,
        /// Print every reduction step.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Decide whether an expression is zero in the quotient.
    Member {
        file: PathBuf,
        expr: String,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Decide whether two expressions are equal in the quotient.
    Equal {
        file: PathBuf,
        lhs: String,
        rhs: String,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// List the irreducible monomials up to a length.
    QuotientBasis {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Decide whether the `phi(x) = ...` lines define an automorphism.
    Autocheck {
        file: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Check the algebra axioms exhaustively on small monomials.
    Axioms {
        #[arg(long)]
        generators: usize,
        /// Field characteristic: 0 or a prime.
        #[arg(long = "char")]
        characteristic: u64,
        #[arg(long)]
        max_len: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: line {line}, column {column}: {message}")]
    File {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Limit(#[from] CompletionError),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Limit(_) => 3,
            _ => 2,
        }
    }
}

/// A command's result: text, its JSON counterpart and the exit code.
struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

fn load(path: &Path) -> Result<Document, CliError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_document(&text).map_err(|e| CliError::File {
        path: shown,
        line: e.line,
        column: e.column,
        message: e.message,
    })
}

/// Evaluates a command-line expression; `@name` refers to a query of the file.
fn expr(doc: &Document, src: &str) -> Result<Poly, CliError> {
    if let Some(name) = src.strip_prefix('@') {
        return doc
            .query(name)
            .cloned()
            .ok_or_else(|| CliError::Input(format!("no query named `{name}`")));
    }
    let p = &doc.presentation;
    let e = parse_expr(src, p.alphabet())
        .map_err(|e| CliError::Input(format!("expression, column {}: {}", e.column, e.message)))?;
    e.eval(p.algebra())
        .map_err(|e| CliError::Input(format!("expression: {e}")))
}

fn basis_json(b: &GsbBasis) -> Value {
    let ab = b.alphabet();
    json!({
        "field": b.field().to_string(),
        "generators": ab.names(),
        "minimal": b.is_minimal(),
        "reduced": b.is_reduced(),
        "relations": b.relations().map(|r| r.poly.display(ab).to_string()).collect::<Vec<_>>(),
    })
}

fn membership(doc: &Document, f: &Poly) -> Result<Outcome, CliError> {
    let p = &doc.presentation;
    let ab = p.alphabet();
    Ok(match p.is_zero_in_quotient(f)? {
        Membership::Member(trace) => {
            let basis = p.basis()?;
            Outcome {
                text: format!(
                    "yes\ncertificate: {} reduction steps\n{}",
                    trace.len(),
                    trace.display(basis)
                ),
                json: json!({
                    "member": true,
                    "steps": trace.steps.iter().map(|s| json!({
                        "relation": basis.relation(s.relation).map(|r| r.poly.display(ab).to_string()),
                        "letters": s.letters.iter().map(|&l| ab.name(l)).collect::<Vec<_>>(),
                        "coefficient": s.coefficient.to_string(),
                    })).collect::<Vec<_>>(),
                }),
                code: 0,
            }
        }
        Membership::NotMember(r) => {
            let shown = r.display(ab).to_string();
            Outcome {
                text: format!("no\nnormal form: {shown}\n"),
                json: json!({ "member": false, "normal_form": shown }),
                code: 1,
            }
        }
    })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Normalize { file, expr: src } => {
            let doc = load(file)?;
            let shown = expr(&doc, src)?
                .display(doc.presentation.alphabet())
                .to_string();
            Ok(Outcome {
                text: format!("{shown}\n"),
                json: json!({ "normal_form": shown }),
                code: 0,
            })
        }
        Command::Complete {
            file,
            minimal,
            limits,
        } => {
            let doc = load(file)?;
            let p = doc.presentation.with_limits(limits.limits());
            let b = p.basis()?;
            let b = if *minimal { b.minimalize() } else { b.clone() };
            Ok(Outcome {
                text: b.render(),
                json: basis_json(&b),
                code: 0,
            })
        }
        Command::Reduce {
            file,
            expr: src,
            trace,
            limits,
        } => {
            let mut doc = load(file)?;
            doc.presentation = doc.presentation.with_limits(limits.limits());
            let f = expr(&doc, src)?;
            let b = doc.presentation.basis()?;
            let (r, steps) = b.reduce(&f, ReduceMode::Full);
            let shown = r.display(b.alphabet()).to_string();
            let mut text = format!("{shown}\n");
            if *trace {
                text.push_str(&steps.display(b).to_string());
            }
            Ok(Outcome {
                text,
                json: json!({ "remainder": shown, "steps": steps.len() }),
                code: 0,
            })
        }
        Command::Member {
            file,
            expr: src,
            limits,
        } => {
            let mut doc = load(file)?;
            doc.presentation = doc.presentation.with_limits(limits.limits());
            let f = expr(&doc, src)?;
            membership(&doc, &f)
        }
        Command::Equal {
            file,
            lhs,
            rhs,
            limits,
        } => {
            let mut doc = load(file)?;
            doc.presentation = doc.presentation.with_limits(limits.limits());
            let f = expr(&doc, lhs)?.sub(&expr(&doc, rhs)?);
            membership(&doc, &f)
        }
        Command::QuotientBasis { file, max_len } => {
            let doc = load(file)?;
            let ab = doc.presentation.alphabet();
            let ms: Vec<String> = doc
                .presentation
                .quotient_basis(*max_len)?
                .iter()
                .map(|m| m.display(ab).to_string())
                .collect();
            let mut text = String::new();
            for m in &ms {
                text.push_str(m);
                text.push('\n');
            }
            Ok(Outcome {
                text,
                json: json!({ "max_len": max_len, "monomials": ms }),
                code: 0,
            })
        }
        Command::Autocheck { file, limits } => {
            let doc = load(file)?;
            let phi = doc
                .endomorphism()
                .map_err(|e| CliError::Input(e.to_string()))?;
            let p = &doc.presentation;
            let ab = p.alphabet();
            let verdict = check_automorphism(&phi, ab, *p.field(), limits.limits());
            let (status, code) = match &verdict {
                Verdict::Yes => ("yes", 0),
                Verdict::No(_) => ("no", 1),
                Verdict::Undecided(_) => ("undecided", 3),
            };
            let reason = match &verdict {
                Verdict::Yes => Value::Null,
                Verdict::No(NotAutomorphism::SingularLinearPart) => json!("singular linear part"),
                Verdict::No(NotAutomorphism::HigherPartOutsideIdeal {
                    generator,
                    remainder,
                }) => json!({
                    "generator": ab.name(*generator),
                    "remainder": remainder.display(ab).to_string(),
                }),
                Verdict::Undecided(e) => json!(e.to_string()),
            };
            Ok(Outcome {
                text: format!("{}\n", verdict.display(ab)),
                json: json!({ "verdict": status, "reason": reason }),
                code,
            })
        }
        Command::Axioms {
            generators,
            characteristic,
            max_len,
        } => {
            if *max_len < 3 || *generators == 0 {
                return Err(CliError::Input(
                    "need --generators >= 1 and --max-len >= 3".into(),
                ));
            }
            let field = FieldSpec::with_characteristic(*characteristic)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let report = verify_axioms(*generators, field, *max_len);
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "instances": c.instances,
                        "failures": c.failures,
                        "counterexample": c.counterexample,
                    })
                })
                .collect();
            Ok(Outcome {
                text: format!("{report}\n"),
                json: json!({
                    "field": field.to_string(),
                    "generators": generators,
                    "max_len": max_len,
                    "passed": report.passed(),
                    "checks": checks,
                }),
                code: if report.passed() { 0 } else { 1 },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code())
        }
    }
}
