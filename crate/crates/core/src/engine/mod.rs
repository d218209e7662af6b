//! The blowup tree: finished-check, chart transformation and the FIFO
//! expansion loop shared by all center strategies.

mod center;

pub use center::{
    center_codim2, center_exceptional, center_exceptional_with, center_maxord, center_mincodim,
    center_mincodim_with, Completion,
};

use std::fmt;
use std::str::FromStr;

use crate::binomial::{Binomial, BinomialState, Coefficient, IotaTuple};
use crate::error::{Error, Result};

/// Center-selection strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Centers in the locus of maximal order.
    MaxOrd,
    /// Codimension-two centers.
    Codim2,
    /// Minimal codimension inside the singular locus.
    MinCodim,
    /// Codimension two when inside the exceptional locus, else `MinCodim`.
    Exceptional,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::MaxOrd,
        Mode::Codim2,
        Mode::MinCodim,
        Mode::Exceptional,
    ];

    pub fn number(self) -> u8 {
        match self {
            Mode::MaxOrd => 1,
            Mode::Codim2 => 2,
            Mode::MinCodim => 3,
            Mode::Exceptional => 4,
        }
    }

    pub fn from_number(n: u8) -> Option<Mode> {
        match n {
            1 => Some(Mode::MaxOrd),
            2 => Some(Mode::Codim2),
            3 => Some(Mode::MinCodim),
            4 => Some(Mode::Exceptional),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::MaxOrd => "maxord",
            Mode::Codim2 => "codim2",
            Mode::MinCodim => "mincodim",
            Mode::Exceptional => "exc",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        if let Ok(n) = s.parse::<u8>() {
            return Mode::from_number(n).ok_or_else(|| format!("mode must be 1-4, got {n}"));
        }
        match s.as_str() {
            "maxord" | "max-ord" | "max.ord" => Ok(Mode::MaxOrd),
            "codim2" | "codim-2" | "codim.2" => Ok(Mode::Codim2),
            "mincodim" | "min-codim" | "min.codim" => Ok(Mode::MinCodim),
            "exc" | "exceptional" => Ok(Mode::Exceptional),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

/// True iff `x^C (x^A - rho x^B)` is `x^C (1 - mu x^B')` or
/// `x^C (x_i - mu x^B')` with `C_i = 0`, up to a constant and the order of
/// the two terms.
pub fn check_finished(state: &BinomialState) -> bool {
    let (sa, sb) = (state.a.total(), state.b.total());
    if sa.min(sb) == 0 {
        return true;
    }
    (0..state.num_vars())
        .any(|i| state.c[i] == 0 && ((sa == 1 && state.a[i] == 1) || (sb == 1 && state.b[i] == 1)))
}

/// Exponents of the total transform in the chart of variable `chart` of the
/// blowup with center `V(x_j | j in center)`.
pub fn transform(state: &BinomialState, center: &[usize], chart: usize) -> Result<BinomialState> {
    if !center.contains(&chart) {
        return Err(Error::InvalidChart {
            chart,
            center: center.to_vec(),
        });
    }
    if center.iter().any(|&j| j >= state.num_vars()) {
        return Err(Error::InvalidCenter(center.to_vec()));
    }
    let sum_a = state.a.sum_over(center);
    let sum_b = state.b.sum_over(center);
    let sum_c = state.c.sum_over(center);
    let delta = sum_a.min(sum_b);
    let narrow = |v: u64| u32::try_from(v).expect("exponent overflow");

    let mut next = state.clone();
    next.a.set(chart, narrow(sum_a - delta));
    next.b.set(chart, narrow(sum_b - delta));
    next.c.set(chart, narrow(sum_c + delta));
    next.exceptional[chart] = true;
    Ok(next)
}

/// Dispatches to the center strategy for `mode`.
pub fn compute_center(state: &BinomialState, mode: Mode) -> Vec<usize> {
    match mode {
        Mode::MaxOrd => center_maxord(state),
        Mode::Codim2 => center_codim2(state),
        Mode::MinCodim => center_mincodim(state),
        Mode::Exceptional => center_exceptional(state),
    }
}

/// One node of the blowup tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub state: BinomialState,
    /// `None` iff the chart is finished.
    pub iota: Option<IotaTuple>,
    /// 0-based variable indices, ascending. `None` iff the chart is finished.
    pub center: Option<Vec<usize>>,
    /// 0-based list position of the predecessor; `None` for the root.
    pub parent: Option<usize>,
    /// 1-based rank among the predecessor's successors; 0 for the root.
    pub ordinal: usize,
    /// 0-based variable index of the chart (`D_+(X_i)`); `None` for the root.
    pub chart_var: Option<usize>,
    pub depth: usize,
}

impl Chart {
    pub fn is_finished(&self) -> bool {
        self.center.is_none()
    }

    fn open(
        state: BinomialState,
        mode: Mode,
        parent: Option<usize>,
        ordinal: usize,
        chart_var: Option<usize>,
        depth: usize,
    ) -> Chart {
        let (iota, center) = if check_finished(&state) {
            (None, None)
        } else {
            (Some(state.iota()), Some(compute_center(&state, mode)))
        };
        Chart {
            state,
            iota,
            center,
            parent,
            ordinal,
            chart_var,
            depth,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunStats {
    pub total: usize,
    pub leaves: usize,
    pub max_depth: usize,
}

impl RunStats {
    pub(crate) fn collect(charts: impl Iterator<Item = (bool, usize)>) -> RunStats {
        let mut stats = RunStats::default();
        for (finished, depth) in charts {
            stats.total += 1;
            if finished {
                stats.leaves += 1;
            }
            stats.max_depth = stats.max_depth.max(depth);
        }
        stats
    }
}

/// All charts of a run in list order; index 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub mode: Mode,
    pub rho: Coefficient,
    /// Set when both monomials coincided at ingestion.
    pub already_monomial: bool,
    pub charts: Vec<Chart>,
    pub stats: RunStats,
}

impl RunResult {
    pub fn num_vars(&self) -> usize {
        self.charts[0].state.num_vars()
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Chart> {
        self.charts.iter().filter(|c| c.is_finished())
    }

    /// Path columns `(predecessor, ordinal)` from the root to chart `index`
    /// (0-based), using 1-based chart numbers; the first column is `(0, -1)`.
    pub fn path(&self, index: usize) -> Vec<(usize, i64)> {
        let mut cols = Vec::new();
        let mut cur = index;
        while let Some(parent) = self.charts[cur].parent {
            cols.push((parent + 1, self.charts[cur].ordinal as i64));
            cur = parent;
        }
        cols.push((0, -1));
        cols.reverse();
        cols
    }
}

/// Runs the blowup loop on `f` until every chart passes [`check_finished`].
pub fn monomialize(f: &Binomial, mode: Mode) -> Result<RunResult> {
    if f.num_vars() == 0 {
        return Err(Error::NoVariables);
    }
    let (root, already_monomial) = BinomialState::from_binomial(f)?;
    let mut run = monomialize_from(root, f.rho.clone(), mode)?;
    run.already_monomial = already_monomial;
    Ok(run)
}

/// Runs the blowup loop from an already normalized state, which may carry
/// exceptional marks.
pub fn monomialize_from(root: BinomialState, rho: Coefficient, mode: Mode) -> Result<RunResult> {
    let n = root.num_vars();
    if n == 0 {
        return Err(Error::NoVariables);
    }
    for found in [root.b.len(), root.c.len(), root.exceptional.len()] {
        if found != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: found,
            });
        }
    }
    if !root.is_coprime() {
        return Err(Error::NotCoprime);
    }
    let already_monomial = root.a.is_zero() && root.b.is_zero();
    let mut charts = vec![Chart::open(root, mode, None, 0, None, 0)];
    let mut next = 0;
    while next < charts.len() {
        if let Some(center) = charts[next].center.clone() {
            let depth = charts[next].depth + 1;
            for (k, &i) in center.iter().enumerate() {
                let state = transform(&charts[next].state, &center, i)?;
                charts.push(Chart::open(state, mode, Some(next), k + 1, Some(i), depth));
            }
        }
        next += 1;
    }
    let stats = RunStats::collect(charts.iter().map(|c| (c.is_finished(), c.depth)));
    Ok(RunResult {
        mode,
        rho,
        already_monomial,
        charts,
        stats,
    })
}
