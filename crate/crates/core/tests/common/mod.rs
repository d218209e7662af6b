//! Shared helpers for the integration suites: random states, the literal
//! substitution oracle and a streaming tree walker that checks every edge.

#![allow(dead_code)]

use std::collections::BTreeMap;

use monoforge::binomial::{normalize, BinomialState, Coefficient, ExponentVector};
use monoforge::bounds;
use monoforge::engine::{
    check_finished, compute_center, monomialize_from, transform, Mode, RunResult,
};
use num_bigint::BigInt;
use proptest::prelude::*;

pub const MAX_VARS: usize = 6;
pub const MAX_ENTRY: u32 = 6;

/// Trees at most this large are also built by `monomialize` and compared.
pub const STORED_RUN_LIMIT: u64 = 200_000;

/// States with `A_i B_i = 0`, entries up to `MAX_ENTRY`, random `C` and `E`.
pub fn state_strategy() -> impl Strategy<Value = BinomialState> {
    (1..=MAX_VARS)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec((0u8..3, 1..=MAX_ENTRY), n),
                proptest::collection::vec(prop_oneof![3 => Just(0u32), 1 => 1..=MAX_ENTRY], n),
                proptest::collection::vec(prop_oneof![3 => Just(false), 1 => Just(true)], n),
            )
        })
        .prop_map(|(slots, c, e)| {
            let n = slots.len();
            let (mut a, mut b) = (vec![0; n], vec![0; n]);
            for (i, (side, v)) in slots.into_iter().enumerate() {
                match side {
                    0 => a[i] = v,
                    1 => b[i] = v,
                    _ => {}
                }
            }
            BinomialState {
                a: a.into(),
                b: b.into(),
                c: c.into(),
                exceptional: e,
            }
        })
}

/// Applies `x_j -> x_chart * x_j` for `j` in `center`, `j != chart`, to the
/// full monomials `x^(A+C)` and `x^(B+C)`, then splits off the common factor.
pub fn substitution_oracle(state: &BinomialState, center: &[usize], chart: usize) -> BinomialState {
    let full = |side: &ExponentVector| -> Vec<u32> {
        side.iter()
            .zip(state.c.iter())
            .map(|(x, c)| x + c)
            .collect()
    };
    let (mut a, mut b) = (full(&state.a), full(&state.b));
    let (mut new_a, mut new_b) = (0, 0);
    for &j in center {
        new_a += a[j];
        new_b += b[j];
    }
    a[chart] = new_a;
    b[chart] = new_b;
    let n = normalize(&a.into(), &b.into(), &"2".parse::<Coefficient>().unwrap()).unwrap();
    let mut exceptional = state.exceptional.clone();
    exceptional[chart] = true;
    BinomialState {
        a: n.a,
        b: n.b,
        c: n.c,
        exceptional,
    }
}

/// Every property the walker and `check_run` test, in report order.
pub const PROPERTIES: [&str; 16] = [
    "iota strictly decreases",
    "inv strictly decreases",
    "A_i B_i = 0 preserved",
    "transform equals literal substitution",
    "transform succeeds inside the center",
    "exceptional set only grows",
    "center is an ascending index set",
    "center lies in the support",
    "center size",
    "maxord center has maximal order",
    "maxord center is minimal",
    "every leaf is finished",
    "every inner chart has |center| ordered successors",
    "engine agrees with the streaming walk",
    "runs are deterministic",
    "depth within bound",
];

/// Violation counts per property, with the first offending example.
#[derive(Debug, Default)]
pub struct Tally {
    pub states: u64,
    pub runs: u64,
    pub charts: u64,
    pub edges: u64,
    pub leaves: u64,
    pub stored_runs: u64,
    pub violations: BTreeMap<&'static str, (u64, String)>,
}

impl Tally {
    pub fn fail(&mut self, property: &'static str, example: impl FnOnce() -> String) {
        let slot = self
            .violations
            .entry(property)
            .or_insert_with(|| (0, example()));
        slot.0 += 1;
    }

    pub fn check(&mut self, ok: bool, property: &'static str, example: impl FnOnce() -> String) {
        if !ok {
            self.fail(property, example);
        }
    }

    pub fn total_violations(&self) -> u64 {
        self.violations.values().map(|v| v.0).sum()
    }
}

fn show(s: &BinomialState) -> String {
    format!("A={} B={} C={} E={:?}", s.a, s.b, s.c, s.exceptional)
}

fn is_coprime(s: &BinomialState) -> bool {
    s.a.iter().zip(s.b.iter()).all(|(x, y)| x * y == 0)
}

fn check_center(t: &mut Tally, s: &BinomialState, center: &[usize], mode: Mode) {
    let n = s.num_vars();
    let ascending = center.windows(2).all(|w| w[0] < w[1]) && center.iter().all(|&i| i < n);
    t.check(ascending, "center is an ascending index set", || show(s));
    t.check(
        center.iter().all(|&i| s.a[i] + s.b[i] > 0),
        "center lies in the support",
        || format!("{} center={center:?}", show(s)),
    );
    let size_ok = match mode {
        Mode::MaxOrd => center.len() >= 2,
        Mode::Codim2 => center.len() == 2,
        Mode::MinCodim | Mode::Exceptional => (2..=4).contains(&center.len()),
    };
    t.check(size_ok, "center size", || {
        format!("{} mode={mode} center={center:?}", show(s))
    });
    if mode == Mode::MaxOrd {
        let order = s.a.total().min(s.b.total());
        let reach = |idx: &[usize]| s.a.sum_over(idx).min(s.b.sum_over(idx));
        t.check(
            reach(center) == order,
            "maxord center has maximal order",
            || format!("{} center={center:?}", show(s)),
        );
        for k in 0..center.len() {
            let mut without = center.to_vec();
            without.remove(k);
            t.check(reach(&without) < order, "maxord center is minimal", || {
                format!("{} center={center:?}", show(s))
            });
        }
    }
}

fn check_edge(
    t: &mut Tally,
    parent: &BinomialState,
    child: &BinomialState,
    center: &[usize],
    chart: usize,
    mode: Mode,
) {
    t.edges += 1;
    let edge = || {
        format!(
            "{} center={center:?} chart={chart} -> {}",
            show(parent),
            show(child)
        )
    };
    t.check(is_coprime(child), "A_i B_i = 0 preserved", edge);
    t.check(
        *child == substitution_oracle(parent, center, chart),
        "transform equals literal substitution",
        edge,
    );
    let grows = parent
        .exceptional
        .iter()
        .zip(&child.exceptional)
        .all(|(&p, &c)| !p || c)
        && child.exceptional[chart];
    t.check(grows, "exceptional set only grows", edge);
    match mode {
        Mode::MaxOrd => t.check(child.inv() < parent.inv(), "inv strictly decreases", edge),
        _ => t.check(
            child.iota() < parent.iota(),
            "iota strictly decreases",
            edge,
        ),
    }
}

/// Walks the whole tree below `root` depth-first without storing it.
/// Returns `(total, leaves, max_depth)`.
pub fn walk(t: &mut Tally, root: &BinomialState, mode: Mode) -> (u64, u64, usize) {
    let mut stack = vec![(root.clone(), 0usize)];
    let (mut total, mut leaves, mut max_depth) = (0u64, 0u64, 0usize);
    while let Some((s, depth)) = stack.pop() {
        total += 1;
        max_depth = max_depth.max(depth);
        if check_finished(&s) {
            leaves += 1;
            continue;
        }
        let center = compute_center(&s, mode);
        check_center(t, &s, &center, mode);
        for &i in center.iter().rev() {
            match transform(&s, &center, i) {
                Ok(child) => {
                    check_edge(t, &s, &child, &center, i, mode);
                    stack.push((child, depth + 1));
                }
                Err(e) => t.fail("transform succeeds inside the center", || {
                    format!("{}: {e}", show(&s))
                }),
            }
        }
    }
    (total, leaves, max_depth)
}

/// Every property for one random state in one mode.
pub fn check_run(t: &mut Tally, root: &BinomialState, mode: Mode) {
    t.runs += 1;
    let (total, leaves, depth) = walk(t, root, mode);
    t.charts += total;
    t.leaves += leaves;

    let (depth_bound, applicable) = bounds::depth_bound(root, mode);
    if applicable {
        t.check(
            BigInt::from(depth) <= depth_bound,
            "depth within bound",
            || {
                format!(
                    "{} mode={mode} depth={depth} bound={depth_bound}",
                    show(root)
                )
            },
        );
    }

    if total <= STORED_RUN_LIMIT {
        t.stored_runs += 1;
        let run = monomialize_state(root, mode);
        let run2 = monomialize_state(root, mode);
        t.check(run == run2, "runs are deterministic", || show(root));
        t.check(
            (
                run.stats.total as u64,
                run.stats.leaves as u64,
                run.stats.max_depth,
            ) == (total, leaves, depth),
            "engine agrees with the streaming walk",
            || format!("{} mode={mode}", show(root)),
        );
        t.check(
            run.leaves().all(|c| check_finished(&c.state)),
            "every leaf is finished",
            || format!("{} mode={mode}", show(root)),
        );
        let mut kids: Vec<Vec<(usize, usize)>> = vec![Vec::new(); run.charts.len()];
        for (j, d) in run.charts.iter().enumerate() {
            if let Some(p) = d.parent {
                kids[p].push((j, d.ordinal));
            }
        }
        let expanded_ok = run
            .charts
            .iter()
            .zip(&kids)
            .enumerate()
            .all(|(k, (c, kids))| {
                kids.len() == c.center.as_ref().map_or(0, Vec::len)
                    && kids
                        .iter()
                        .enumerate()
                        .all(|(r, &(j, ord))| ord == r + 1 && j > k)
            });
        t.check(
            expanded_ok,
            "every inner chart has |center| ordered successors",
            || format!("{} mode={mode}", show(root)),
        );
    }
}

fn monomialize_state(root: &BinomialState, mode: Mode) -> RunResult {
    monomialize_from(root.clone(), Coefficient::one(), mode).unwrap()
}
