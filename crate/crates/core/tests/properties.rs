mod common;

use monoforge::binomial::{normalize, Binomial, BinomialState, Coefficient, ExponentVector};
use monoforge::bounds;
use monoforge::cli::corpus::parse_corpus;
use monoforge::engine::{compute_center, monomialize, monomialize_from, transform, Mode};
use monoforge::error::Error;
use monoforge::multirun::sequential_monomialize;
use monoforge::parser::{parse, render, render_binomial};
use num_bigint::BigInt;
use proptest::prelude::*;

fn raw_pair() -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
    (1..=common::MAX_VARS).prop_flat_map(|n| {
        (
            proptest::collection::vec(0..=common::MAX_ENTRY, n),
            proptest::collection::vec(0..=common::MAX_ENTRY, n),
        )
    })
}

fn coefficient() -> impl Strategy<Value = Coefficient> {
    (-9i64..=9, 1i64..=9)
        .prop_filter("nonzero", |(p, _)| *p != 0)
        .prop_map(|(p, q)| format!("{}/{q}", p).parse().unwrap())
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("x{k}")).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn normalize_reconstructs_and_is_idempotent((a, b) in raw_pair()) {
        prop_assume!(a != b);
        let (a, b): (ExponentVector, ExponentVector) = (a.into(), b.into());
        let n = normalize(&a, &b, &Coefficient::one()).unwrap();
        for i in 0..a.len() {
            prop_assert_eq!(n.a[i] + n.c[i], a[i]);
            prop_assert_eq!(n.b[i] + n.c[i], b[i]);
            prop_assert!(n.a[i] == 0 || n.b[i] == 0);
        }
        let again = normalize(&n.a, &n.b, &Coefficient::one()).unwrap();
        prop_assert_eq!(&again.a, &n.a);
        prop_assert_eq!(&again.b, &n.b);
        prop_assert!(again.c.is_zero());
    }

    #[test]
    fn transform_matches_substitution(state in common::state_strategy(), pick in any::<prop::sample::Index>(), mode_k in 0usize..4) {
        let mode = Mode::ALL[mode_k];
        prop_assume!(!monoforge::engine::check_finished(&state));
        let center = compute_center(&state, mode);
        let chart = center[pick.index(center.len())];
        let child = transform(&state, &center, chart).unwrap();
        prop_assert_eq!(child, common::substitution_oracle(&state, &center, chart));
    }

    #[test]
    fn chart_outside_center_is_rejected(state in common::state_strategy()) {
        prop_assume!(!monoforge::engine::check_finished(&state));
        let center = compute_center(&state, Mode::Codim2);
        let outside = (0..state.num_vars()).find(|i| !center.contains(i));
        if let Some(i) = outside {
            let rejected = matches!(transform(&state, &center, i), Err(Error::InvalidChart { .. }));
            prop_assert!(rejected);
        }
    }

    #[test]
    fn render_then_parse_round_trips((a, b) in raw_pair(), rho in coefficient()) {
        prop_assume!(a != b);
        let vars = names(a.len());
        let text = render_binomial(&a.clone().into(), &b.clone().into(), &rho, &vars);
        let p = parse(&text, Some(&vars)).unwrap();
        prop_assert_eq!(p.a_raw.as_slice(), a.as_slice());
        prop_assert_eq!(p.b_raw.as_slice(), b.as_slice());
        prop_assert_eq!(&p.rho, &rho);
        let q = parse(&render(&p), Some(&vars)).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn runs_are_deterministic(state in common::state_strategy(), mode_k in 0usize..4) {
        let mode = Mode::ALL[mode_k];
        prop_assume!(common::walk(&mut common::Tally::default(), &state, mode).0 <= 20_000);
        let a = monomialize_from(state.clone(), Coefficient::one(), mode).unwrap();
        let b = monomialize_from(state, Coefficient::one(), mode).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn sequence_of_one_equals_single_run((a, b) in raw_pair(), mode_k in 0usize..4) {
        prop_assume!(a != b);
        let mode = Mode::ALL[mode_k];
        let f = Binomial::new(a, b);
        let root = BinomialState::from_binomial(&f).unwrap().0;
        prop_assume!(common::walk(&mut common::Tally::default(), &root, mode).0 <= 20_000);
        let single = monomialize(&f, mode).unwrap();
        let multi = sequential_monomialize(std::slice::from_ref(&f), mode).unwrap();
        prop_assert_eq!(single.stats.total, multi.stats.total);
        prop_assert_eq!(single.stats.leaves, multi.stats.finals);
        prop_assert_eq!(single.stats.max_depth, multi.stats.max_depth);
    }
}

#[test]
fn random_suite_smoke() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strategy = common::state_strategy();
    let mut tally = common::Tally::default();
    for _ in 0..300 {
        let state =
            proptest::strategy::ValueTree::current(&strategy.new_tree(&mut runner).unwrap());
        for mode in Mode::ALL {
            common::check_run(&mut tally, &state, mode);
        }
    }
    // The closed depth formula is checked by the acceptance suite; every
    // structural property must hold here.
    tally.violations.remove("depth within bound");
    assert!(tally.violations.is_empty(), "{:#?}", tally.violations);
}

/// Depth and chart count of every corpus run stay within the closed bounds
/// whenever those apply.
#[test]
fn corpus_runs_respect_applicable_bounds() {
    let mut failures = Vec::new();
    for text in [
        include_str!("../corpus/baseline.corpus"),
        include_str!("../corpus/permuted.corpus"),
    ] {
        for e in parse_corpus(text).unwrap() {
            let f = parse(&e.expr, None).unwrap().to_binomial();
            for mode in Mode::ALL {
                let r = bounds::report(&monomialize(&f, mode).unwrap());
                if r.bound_applicable && !r.holds() {
                    failures.push(format!(
                        "row {} mode {mode}: depth {} (bound {}), total {} (bound {})",
                        e.name(),
                        r.depth_actual,
                        r.depth_bound,
                        r.total_actual,
                        r.chart_bound
                    ));
                }
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn mode_one_bound_holds_on_corpus() {
    for e in parse_corpus(include_str!("../corpus/baseline.corpus")).unwrap() {
        let f = parse(&e.expr, None).unwrap().to_binomial();
        let r = bounds::report(&monomialize(&f, Mode::MaxOrd).unwrap());
        assert!(r.bound_applicable);
        assert!(
            BigInt::from(r.depth_actual) <= r.depth_bound,
            "row {}",
            e.name()
        );
        assert!(
            BigInt::from(r.total_actual) <= r.chart_bound,
            "row {}",
            e.name()
        );
    }
}
