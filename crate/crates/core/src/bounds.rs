//! Worst-case upper bounds for the longest path and the number of charts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial::BinomialState;
use crate::engine::{check_finished, Mode, RunResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub mode: Mode,
    pub depth_bound: BigInt,
    pub chart_bound: BigInt,
    pub depth_actual: usize,
    pub total_actual: usize,
    /// False when the closed formula does not cover the state. `depth_bound`
    /// then holds `a_count + b_count + 1`, which is reported but is not an
    /// upper bound in general.
    pub bound_applicable: bool,
}

impl BoundReport {
    /// Whether the actual run stays within both bounds.
    pub fn holds(&self) -> bool {
        BigInt::from(self.depth_actual) <= self.depth_bound
            && BigInt::from(self.total_actual) <= self.chart_bound
    }
}

/// Longest-path bound for mode 1 in terms of the order `m` and the larger
/// entry sum `big_m`:
/// `2^(m-1) M + m - 1 - sum_{l=1}^{m-1} 2^(m-l-1) (m-l+1)`.
pub fn maxord_depth(m: u64, big_m: u64) -> BigInt {
    if m == 0 {
        return BigInt::zero();
    }
    let pow2 = |e: u64| BigInt::one() << e;
    let mut d = pow2(m - 1) * big_m + BigInt::from(m - 1);
    for l in 1..m {
        d -= pow2(m - l - 1) * (m - l + 1);
    }
    d
}

/// Longest-path bound; the flag is false when the fallback was used.
pub fn depth_bound(state: &BinomialState, mode: Mode) -> (BigInt, bool) {
    if check_finished(state) {
        return (BigInt::zero(), true);
    }
    match mode {
        Mode::MaxOrd => {
            let inv = state.inv();
            (maxord_depth(inv.min, inv.max), true)
        }
        Mode::Codim2 | Mode::MinCodim | Mode::Exceptional => {
            let iota = state.iota();
            let counts = BigInt::from(iota.a_count + iota.b_count + 1);
            if iota.alpha.min(iota.beta) >= 2 {
                let n = BigInt::from(state.num_vars()) - 1;
                let spread = BigInt::from(iota.alpha) + iota.beta - 4;
                (spread * n + counts, true)
            } else {
                (counts, false)
            }
        }
    }
}

/// Chart-count bound: `n^d` for mode 1, `2^d` for mode 2 and `4^d` for
/// modes 3 and 4, where `d` is the depth bound.
pub fn chart_bound(state: &BinomialState, mode: Mode) -> BigInt {
    let (depth, _) = depth_bound(state, mode);
    let base = match mode {
        Mode::MaxOrd => BigInt::from(state.num_vars()),
        Mode::Codim2 => BigInt::from(2),
        Mode::MinCodim | Mode::Exceptional => BigInt::from(4),
    };
    let exp = u32::try_from(depth).expect("depth bound out of range");
    num_traits::pow(base, exp as usize)
}

/// Bounds for the root of `run` together with its actual statistics.
pub fn report(run: &RunResult) -> BoundReport {
    let root = &run.charts[0].state;
    let (depth_bound, bound_applicable) = depth_bound(root, run.mode);
    BoundReport {
        mode: run.mode,
        depth_bound,
        chart_bound: chart_bound(root, run.mode),
        depth_actual: run.stats.max_depth,
        total_actual: run.stats.total,
        bound_applicable,
    }
}
