//! JSON and DOT renderings of a run. Chart numbers in both are 1-based.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::binomial::{ExponentVector, IotaTuple};
use crate::engine::RunResult;
use crate::multirun::MultiRunResult;
use crate::parser::{render_binomial, render_state};

pub const SCHEMA_VERSION: u32 = 1;

fn exps(v: &ExponentVector) -> Value {
    json!(v.as_slice())
}

fn flags(e: &[bool]) -> Value {
    json!(e.iter().map(|&b| u8::from(b)).collect::<Vec<_>>())
}

fn iota(t: &Option<IotaTuple>) -> Value {
    match t {
        Some(t) => json!([t.alpha, t.a_count, t.beta, t.b_count]),
        None => Value::Null,
    }
}

fn center(c: &Option<Vec<usize>>) -> Value {
    match c {
        Some(c) => json!(c.iter().map(|i| i + 1).collect::<Vec<_>>()),
        None => Value::Null,
    }
}

fn ordinal(parent: Option<usize>, ordinal: usize) -> i64 {
    match parent {
        Some(_) => ordinal as i64,
        None => -1,
    }
}

/// Schema v1 document. Object keys come out sorted, so equal runs give
/// byte-identical text.
pub fn run_to_json(run: &RunResult, variables: &[String]) -> Value {
    let charts: Vec<Value> = run
        .charts
        .iter()
        .enumerate()
        .map(|(k, c)| {
            json!({
                "index": k + 1,
                "A": exps(&c.state.a),
                "B": exps(&c.state.b),
                "C": exps(&c.state.c),
                "E": flags(&c.state.exceptional),
                "iota": iota(&c.iota),
                "center": center(&c.center),
                "parent": c.parent.map_or(0, |p| p + 1),
                "ordinal": ordinal(c.parent, c.ordinal),
                "finished": c.is_finished(),
            })
        })
        .collect();
    json!({
        "version": SCHEMA_VERSION,
        "mode": run.mode.number(),
        "n": run.num_vars(),
        "variables": variables,
        "rho": run.rho.to_string(),
        "charts": charts,
        "stats": {
            "leaves": run.stats.leaves,
            "max_depth": run.stats.max_depth,
            "total": run.stats.total,
        },
    })
}

/// Same layout for a multi-binomial run; each chart lists the raw total
/// transforms instead of one normalized state.
pub fn multirun_to_json(run: &MultiRunResult, variables: &[String]) -> Value {
    let charts: Vec<Value> = run
        .charts
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let raw: Vec<Value> = c
                .raw
                .iter()
                .map(|(a, b)| json!({ "A": exps(a), "B": exps(b) }))
                .collect();
            json!({
                "index": k + 1,
                "raw": raw,
                "E": flags(&c.exceptional),
                "active": c.active + 1,
                "iota": iota(&c.iota),
                "center": center(&c.center),
                "parent": c.parent.map_or(0, |p| p + 1),
                "ordinal": ordinal(c.parent, c.ordinal),
                "final": c.is_final(),
                "terminal": c.is_terminal(),
            })
        })
        .collect();
    json!({
        "version": SCHEMA_VERSION,
        "mode": run.mode.number(),
        "n": variables.len(),
        "variables": variables,
        "rho": run.coefficients.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "charts": charts,
        "stats": {
            "final": run.stats.finals,
            "max_depth": run.stats.max_depth,
            "terminal": run.stats.terminal,
            "total": run.stats.total,
        },
    })
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Directed tree; each node is labeled with its chart and total transform,
/// e.g. `D+(x): x^2*(y^2 - x)`.
pub fn run_to_dot(run: &RunResult, variables: &[String]) -> String {
    let mut out = String::from("digraph charts {\n  node [shape=box];\n");
    for (k, c) in run.charts.iter().enumerate() {
        let body = render_state(&c.state, &run.rho, variables);
        let label = match c.chart_var {
            Some(i) => format!("D+({}): {body}", variables[i]),
            None => {
                let root = &c.state;
                let a = root
                    .a
                    .iter()
                    .zip(root.c.iter())
                    .map(|(x, y)| x + y)
                    .collect::<Vec<_>>();
                let b = root
                    .b
                    .iter()
                    .zip(root.c.iter())
                    .map(|(x, y)| x + y)
                    .collect::<Vec<_>>();
                format!(
                    "f = {}",
                    render_binomial(&a.into(), &b.into(), &run.rho, variables)
                )
            }
        };
        let _ = writeln!(out, "  c{} [label=\"{}\"];", k + 1, escape(&label));
    }
    for (k, c) in run.charts.iter().enumerate() {
        if let Some(p) = c.parent {
            let _ = writeln!(out, "  c{} -> c{};", p + 1, k + 1);
        }
    }
    out.push_str("}\n");
    out
}
