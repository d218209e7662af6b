//! Command-line front-end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 parse error, 3 engine error,
//! 4 corpus mismatch.

pub mod corpus;
pub mod export;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::bounds;
use crate::engine::{monomialize, Mode, RunResult};
use crate::multirun::{product_is_monomial_form, sequential_monomialize};
use crate::parser::{self, ParseError, ParsedBinomial};
use corpus::{check_corpus, parse_corpus, CellStatus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_ENGINE: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Worker count for `batch`.
pub const THREADS_ENV: &str = "MONOFORGE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "monoforge",
    version,
    about = "Monomialize binomials by coordinate blowups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one strategy and print a summary, the chart list or the tree.
    Monomialize {
        expr: String,
        /// 1-4 or maxord, codim2, mincodim, exc.
        #[arg(long, short, default_value = "codim2")]
        mode: Mode,
        /// Variable order, comma separated.
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
        /// Write the JSON or DOT output here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run all four strategies, one line each.
    Compare {
        expr: String,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
    /// Run every row of a corpus file.
    Batch {
        corpus: PathBuf,
        /// Compare against the expectations; exit 4 on any mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Upper bounds for the longest path and the number of charts.
    Bounds {
        expr: String,
        #[arg(long, short, default_value = "codim2")]
        mode: Mode,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Monomialize several binomials one after another.
    Sequence {
        #[arg(required = true)]
        exprs: Vec<String>,
        #[arg(long, short, default_value = "codim2")]
        mode: Mode,
        /// Permutation of the inputs, 1-based and comma separated.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<crate::error::Error> for Failure {
    fn from(e: crate::error::Error) -> Self {
        Failure::new(EXIT_ENGINE, format!("error: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_IO, format!("error: {e}"))
    }
}

fn parse_failure(expr: &str, e: &ParseError) -> Failure {
    Failure::new(
        EXIT_PARSE,
        format!("error: {e}\n  {expr}\n  {}^", " ".repeat(e.position)),
    )
}

fn parse_expr(expr: &str, vars: Option<&[String]>) -> Result<ParsedBinomial, Failure> {
    parser::parse(expr, vars).map_err(|e| parse_failure(expr, &e))
}

fn summary(run: &RunResult) -> String {
    format!(
        "mode={} leaves={} total={} depth={}",
        run.mode.number(),
        run.stats.leaves,
        run.stats.total,
        run.stats.max_depth
    )
}

fn big(v: &BigInt) -> Value {
    match v.to_u64() {
        Some(small) => json!(small),
        None => json!(v.to_string()),
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn threads_from_env() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(1)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Monomialize {
            expr,
            mode,
            vars,
            json,
            dot,
            output,
        } => {
            let p = parse_expr(&expr, vars.as_deref())?;
            let run = monomialize(&p.to_binomial(), mode)?;
            if json {
                let text = export::to_pretty(&export::run_to_json(&run, &p.variables));
                emit(out, output.as_ref(), &text)?;
            } else if dot {
                emit(
                    out,
                    output.as_ref(),
                    &export::run_to_dot(&run, &p.variables),
                )?;
            } else {
                writeln!(out, "{}", summary(&run))?;
            }
        }
        Command::Compare { expr, vars } => {
            let p = parse_expr(&expr, vars.as_deref())?;
            let f = p.to_binomial();
            for mode in Mode::ALL {
                writeln!(out, "{}", summary(&monomialize(&f, mode)?))?;
            }
        }
        Command::Batch { corpus, check } => return batch(&corpus, check, out),
        Command::Bounds {
            expr,
            mode,
            vars,
            json,
        } => {
            let p = parse_expr(&expr, vars.as_deref())?;
            let run = monomialize(&p.to_binomial(), mode)?;
            let r = bounds::report(&run);
            if json {
                let v = json!({
                    "mode": mode.number(),
                    "depth_bound": big(&r.depth_bound),
                    "chart_bound": big(&r.chart_bound),
                    "depth_actual": r.depth_actual,
                    "total_actual": r.total_actual,
                    "bound_applicable": r.bound_applicable,
                });
                out.write_all(export::to_pretty(&v).as_bytes())?;
            } else {
                writeln!(
                    out,
                    "mode={} depth_bound={} chart_bound={} applicable={} depth={} total={}",
                    mode.number(),
                    r.depth_bound,
                    r.chart_bound,
                    r.bound_applicable,
                    r.depth_actual,
                    r.total_actual
                )?;
            }
        }
        Command::Sequence {
            exprs,
            mode,
            order,
            vars,
            json,
        } => {
            let exprs = permute(exprs, order)?;
            let texts: Vec<&str> = exprs.iter().map(String::as_str).collect();
            let parsed = parser::parse_all(&texts, vars.as_deref())
                .map_err(|(k, e)| parse_failure(texts[k], &e))?;
            let fs: Vec<_> = parsed.iter().map(ParsedBinomial::to_binomial).collect();
            let run = sequential_monomialize(&fs, mode)?;
            let variables = &parsed[0].variables;
            if json {
                let text = export::to_pretty(&export::multirun_to_json(&run, variables));
                out.write_all(text.as_bytes())?;
            } else {
                let product = run
                    .finals()
                    .filter(|c| product_is_monomial_form(c, &run.coefficients))
                    .count();
                writeln!(
                    out,
                    "final={} total={} terminal={} depth={} product_monomial={}",
                    run.stats.finals,
                    run.stats.total,
                    run.stats.terminal,
                    run.stats.max_depth,
                    product
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn permute(exprs: Vec<String>, order: Option<Vec<usize>>) -> Result<Vec<String>, Failure> {
    let Some(order) = order else {
        return Ok(exprs);
    };
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != (1..=exprs.len()).collect::<Vec<_>>() {
        return Err(Failure::new(
            EXIT_PARSE,
            format!("error: --order must be a permutation of 1..{}", exprs.len()),
        ));
    }
    Ok(order.into_iter().map(|k| exprs[k - 1].clone()).collect())
}

fn batch(path: &PathBuf, check: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("error: {}: {e}", path.display())))?;
    let entries =
        parse_corpus(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("error: {e}")))?;
    let reports = check_corpus(&entries, threads_from_env());

    let mut code = EXIT_OK;
    let (mut passed, mut skipped, mut mismatched) = (0, 0, 0);
    for report in &reports {
        let name = report.entry.name();
        let cells = match &report.outcome {
            Ok(cells) => cells,
            Err(e) => {
                writeln!(out, "{name}: {e}")?;
                let failed = match e {
                    corpus::RowFailure::Parse(_) => EXIT_PARSE,
                    corpus::RowFailure::Engine(_) => EXIT_ENGINE,
                };
                code = code.max(failed);
                continue;
            }
        };
        for cell in cells {
            let expected = cell.expected.map_or("-".to_string(), |e| e.to_string());
            match &cell.status {
                CellStatus::Pass => passed += 1,
                CellStatus::Skipped(_) => skipped += 1,
                CellStatus::Mismatch => {
                    mismatched += 1;
                    if check {
                        writeln!(
                            out,
                            "{name}, {}, {expected}, {}",
                            cell.mode.number(),
                            cell.got
                        )?;
                    }
                }
                CellStatus::Recorded => {}
            }
            if !check {
                writeln!(
                    out,
                    "{name} mode={} leaves={} total={} depth={}",
                    cell.mode.number(),
                    cell.got.leaves,
                    cell.got.total,
                    cell.max_depth
                )?;
            }
        }
    }
    if check {
        writeln!(
            out,
            "rows={} passed={passed} skipped={skipped} mismatched={mismatched}",
            reports.len()
        )?;
        if mismatched > 0 {
            code = code.max(EXIT_MISMATCH);
        }
    }
    Ok(code)
}

/// Runs a parsed command line, writing results to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}
