//! Center selection. Every function returns the center's variable indices
//! (0-based) in ascending order. Argmax ties go to the smallest index; see
//! [`Completion`] for the unit-entry completion.

use crate::binomial::{BinomialState, ExponentVector};

/// Center inside the locus of maximal order, minimal with respect to
/// inclusion.
pub fn center_maxord(state: &BinomialState) -> Vec<usize> {
    let (sa, sb) = (state.a.total(), state.b.total());
    let mut center: Vec<usize> = if sa < sb {
        let mut center: Vec<usize> = state.a.support().collect();
        center.extend(minimal_cover(&state.b, sa));
        center
    } else if sb < sa {
        let mut center: Vec<usize> = state.b.support().collect();
        center.extend(minimal_cover(&state.a, sb));
        center
    } else {
        state.a.support().chain(state.b.support()).collect()
    };
    center.sort_unstable();
    center
}

/// Collects support indices of `side` in ascending order until their sum
/// reaches `target`, then drops (again ascending) every index whose removal
/// keeps the sum at or above `target`.
fn minimal_cover(side: &ExponentVector, target: u64) -> Vec<usize> {
    let mut cover = Vec::new();
    let mut sum = 0u64;
    for j in side.support() {
        cover.push(j);
        sum += u64::from(side[j]);
        if sum >= target {
            break;
        }
    }
    let candidates = cover.clone();
    for j in candidates {
        let without = sum - u64::from(side[j]);
        if without >= target {
            cover.retain(|&k| k != j);
            sum = without;
        }
    }
    cover
}

/// `{ min argmax A, min argmax B }`.
pub fn center_codim2(state: &BinomialState) -> Vec<usize> {
    let (_, i1, _) = state.a.max_entry();
    let (_, i2, _) = state.b.max_entry();
    sorted(vec![i1, i2])
}

/// Which extra index completes the center in cases where the maximal entry
/// on a side is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Completion {
    /// Smallest index after the argmax with entry 1.
    Smallest,
    /// Largest index after the argmax with entry 1. Reproduces the reference
    /// chart-count tables.
    #[default]
    Largest,
}

/// Center of minimal codimension inside the singular locus.
pub fn center_mincodim(state: &BinomialState) -> Vec<usize> {
    center_mincodim_with(state, Completion::default())
}

pub fn center_mincodim_with(state: &BinomialState, completion: Completion) -> Vec<usize> {
    let (alpha, i1, _) = state.a.max_entry();
    let (beta, i2, _) = state.b.max_entry();
    let m = state.a.total().min(state.b.total());
    let mut center = vec![i1, i2];
    if alpha.min(beta) >= 2 || m == 1 {
        return sorted(center);
    }
    // m >= 2 here, so a side with maximal entry 1 has a second unit entry
    if alpha == 1 {
        center.extend(unit_entry_after(&state.a, i1, completion));
    }
    if beta == 1 {
        center.extend(unit_entry_after(&state.b, i2, completion));
    }
    sorted(center)
}

/// Codimension-two center whenever it meets the exceptional locus, otherwise
/// the minimal-codimension center.
pub fn center_exceptional(state: &BinomialState) -> Vec<usize> {
    center_exceptional_with(state, Completion::default())
}

pub fn center_exceptional_with(state: &BinomialState, completion: Completion) -> Vec<usize> {
    let (alpha, i1, _) = state.a.max_entry();
    let (beta, i2, _) = state.b.max_entry();
    let m = state.a.total().min(state.b.total());
    if alpha.min(beta) >= 2 || m == 1 || state.is_exceptional(i1) || state.is_exceptional(i2) {
        sorted(vec![i1, i2])
    } else {
        center_mincodim_with(state, completion)
    }
}

fn unit_entry_after(side: &ExponentVector, after: usize, completion: Completion) -> Option<usize> {
    let mut candidates = (after + 1..side.len()).filter(|&j| side[j] == 1);
    match completion {
        Completion::Smallest => candidates.next(),
        Completion::Largest => candidates.next_back(),
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}
