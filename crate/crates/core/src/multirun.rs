//! Sequential monomialization of several binomials over the same variables:
//! the first binomial that is not yet finished in a chart chooses the
//! center, and every binomial is carried along as its raw total transform.

use crate::binomial::{normalize, Binomial, BinomialState, Coefficient, ExponentVector, IotaTuple};
use crate::engine::{check_finished, compute_center, Mode};
use crate::error::{Error, Result};

/// One node of a multi-binomial blowup tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiChart {
    /// Raw total transforms `(A~, B~)` of every binomial in this chart.
    pub raw: Vec<(ExponentVector, ExponentVector)>,
    pub exceptional: Vec<bool>,
    /// Index of the binomial driving the center; equals `raw.len()` when
    /// every binomial is finished.
    pub active: usize,
    /// Normalized active binomial with the shared exceptional marks.
    pub state: Option<BinomialState>,
    pub iota: Option<IotaTuple>,
    pub center: Option<Vec<usize>>,
    pub parent: Option<usize>,
    pub ordinal: usize,
    pub chart_var: Option<usize>,
    pub depth: usize,
    /// Every binomial passes the finished test in this chart. Blowups chosen
    /// for a later binomial can undo an earlier one, so a terminal chart is
    /// not necessarily resolved.
    pub resolved: bool,
}

impl MultiChart {
    /// No center was chosen: every binomial from the inherited active index
    /// on is finished.
    pub fn is_terminal(&self) -> bool {
        self.center.is_none()
    }

    pub fn is_final(&self) -> bool {
        self.is_terminal() && self.resolved
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MultiRunStats {
    pub total: usize,
    pub terminal: usize,
    /// Terminal charts in which every binomial is finished.
    pub finals: usize,
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiRunResult {
    pub mode: Mode,
    pub coefficients: Vec<Coefficient>,
    pub charts: Vec<MultiChart>,
    pub stats: MultiRunStats,
}

impl MultiRunResult {
    pub fn finals(&self) -> impl Iterator<Item = &MultiChart> {
        self.charts.iter().filter(|c| c.is_final())
    }

    /// Number of charts in which binomial `k` drives the center.
    pub fn phase_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.coefficients.len()];
        for c in self.charts.iter().filter(|c| !c.is_terminal()) {
            sizes[c.active] += 1;
        }
        sizes
    }
}

fn normalized_state(
    raw: &(ExponentVector, ExponentVector),
    rho: &Coefficient,
    exceptional: &[bool],
) -> Result<BinomialState> {
    let n = normalize(&raw.0, &raw.1, rho)?;
    Ok(BinomialState {
        a: n.a,
        b: n.b,
        c: n.c,
        exceptional: exceptional.to_vec(),
    })
}

fn open_chart(
    raw: Vec<(ExponentVector, ExponentVector)>,
    exceptional: Vec<bool>,
    start: usize,
    coefficients: &[Coefficient],
    mode: Mode,
) -> Result<MultiChart> {
    let mut active = start;
    let mut state = None;
    while active < raw.len() {
        let s = normalized_state(&raw[active], &coefficients[active], &exceptional)?;
        if !check_finished(&s) {
            state = Some(s);
            break;
        }
        active += 1;
    }
    let mut resolved = state.is_none();
    for k in 0..start.min(raw.len()) {
        if !resolved {
            break;
        }
        resolved = check_finished(&normalized_state(&raw[k], &coefficients[k], &exceptional)?);
    }
    let (iota, center) = match &state {
        Some(s) => (Some(s.iota()), Some(compute_center(s, mode))),
        None => (None, None),
    };
    Ok(MultiChart {
        raw,
        exceptional,
        active,
        state,
        iota,
        center,
        parent: None,
        ordinal: 0,
        chart_var: None,
        depth: 0,
        resolved,
    })
}

/// Substitutes `x_j -> x_chart * x_j` for `j` in `center`, `j != chart`.
fn substitute(v: &ExponentVector, center: &[usize], chart: usize) -> ExponentVector {
    let mut out = v.clone();
    let sum = v.sum_over(center);
    out.set(chart, u32::try_from(sum).expect("exponent overflow"));
    out
}

/// Monomializes `fs` one after another in list order.
pub fn sequential_monomialize(fs: &[Binomial], mode: Mode) -> Result<MultiRunResult> {
    let first = fs.first().ok_or(Error::EmptyInput)?;
    let n = first.num_vars();
    if n == 0 {
        return Err(Error::NoVariables);
    }
    for (index, f) in fs.iter().enumerate() {
        for found in [f.a.len(), f.b.len()] {
            if found != n {
                return Err(Error::DimensionMismatch {
                    index,
                    expected: n,
                    found,
                });
            }
        }
    }
    let coefficients: Vec<Coefficient> = fs.iter().map(|f| f.rho.clone()).collect();
    let raw: Vec<_> = fs.iter().map(|f| (f.a.clone(), f.b.clone())).collect();
    for (pair, rho) in raw.iter().zip(&coefficients) {
        normalize(&pair.0, &pair.1, rho)?;
    }

    let mut charts = vec![open_chart(raw, vec![false; n], 0, &coefficients, mode)?];
    let mut next = 0;
    while next < charts.len() {
        if let Some(center) = charts[next].center.clone() {
            let parent = &charts[next];
            let (depth, start) = (parent.depth + 1, parent.active);
            let mut children = Vec::with_capacity(center.len());
            for (k, &i) in center.iter().enumerate() {
                let raw = parent
                    .raw
                    .iter()
                    .map(|(a, b)| (substitute(a, &center, i), substitute(b, &center, i)))
                    .collect();
                let mut exceptional = parent.exceptional.clone();
                exceptional[i] = true;
                let mut child = open_chart(raw, exceptional, start, &coefficients, mode)?;
                child.parent = Some(next);
                child.ordinal = k + 1;
                child.chart_var = Some(i);
                child.depth = depth;
                children.push(child);
            }
            charts.extend(children);
        }
        next += 1;
    }
    let mut stats = MultiRunStats::default();
    for c in &charts {
        stats.total += 1;
        stats.terminal += usize::from(c.is_terminal());
        stats.finals += usize::from(c.is_final());
        stats.max_depth = stats.max_depth.max(c.depth);
    }
    Ok(MultiRunResult {
        mode,
        coefficients,
        charts,
        stats,
    })
}

/// Whether the product of all binomials in a final chart has the shape
/// `x^C (1 - mu x^B)` or `x^C (x_i - mu x^B)` with `C_i = 0`. Reported only;
/// the driver never acts on it.
pub fn product_is_monomial_form(chart: &MultiChart, coefficients: &[Coefficient]) -> bool {
    let n = chart.exceptional.len();
    let mut common = vec![0u32; n];
    let mut nontrivial = Vec::new();
    for (pair, rho) in chart.raw.iter().zip(coefficients) {
        let Ok(norm) = normalize(&pair.0, &pair.1, rho) else {
            return false;
        };
        for (slot, e) in common.iter_mut().zip(norm.c.iter()) {
            *slot += e;
        }
        if !(norm.a.is_zero() && norm.b.is_zero()) {
            nontrivial.push(norm);
        }
    }
    match nontrivial.as_slice() {
        [] => true,
        [only] => check_finished(&BinomialState {
            a: only.a.clone(),
            b: only.b.clone(),
            c: common.into(),
            exceptional: chart.exceptional.clone(),
        }),
        _ => false,
    }
}
