use lyapnum::oracle::{
    closed_form, exact_l_estimates, exact_l_estimates_with, oracle_vs_estimator, CylinderSpec,
    Dyadic, OracleQuery, PairSet,
};
use lyapnum::{EstimatorConfig, OracleError, SymbolicWord};

/// All words of length `len` over `k` symbols.
fn words(k: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k as u8).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// `d(σⁿx, σⁿy)` straight from the definition on the stored words.
fn shifted_distance(x: &[u8], y: &[u8], n: usize) -> f64 {
    match x[n..].iter().zip(&y[n..]).position(|(a, b)| a != b) {
        Some(i) => 0.5f64.powi(i as i32),
        None => 0.0,
    }
}

/// `(L1, L2, L3, L4)` over all cylinders of depth `m` by direct comparison of
/// every pair of words of length `w`.
fn brute_force(k: usize, m: usize, w: usize, horizon: usize, tail_from: usize) -> [f64; 4] {
    let all = words(k, w);
    let mut out = [f64::INFINITY; 4];
    for prefix in words(k, m) {
        let cyl: Vec<&Vec<u8>> = all.iter().filter(|v| v[..m] == prefix[..]).collect();
        let mut radius_full = f64::INFINITY;
        let mut radius_tail = f64::INFINITY;
        let (mut pair_full, mut pair_tail) = (0.0f64, 0.0f64);
        for x in &cyl {
            let (mut rf, mut rt) = (0.0f64, 0.0f64);
            for y in &cyl {
                for n in 0..=horizon {
                    let d = shifted_distance(x, y, n);
                    rf = rf.max(d);
                    if n >= tail_from {
                        rt = rt.max(d);
                    }
                }
            }
            radius_full = radius_full.min(rf);
            radius_tail = radius_tail.min(rt);
            pair_full = pair_full.max(rf);
            pair_tail = pair_tail.max(rt);
        }
        for (slot, v) in out
            .iter_mut()
            .zip([radius_full, pair_full, radius_tail, pair_tail])
        {
            *slot = slot.min(v);
        }
    }
    out
}

#[test]
fn binary_depth_two_is_all_ones() {
    let e = exact_l_estimates(2, 2, 12, 8, 0.5).unwrap();
    assert_eq!(e.as_array(), [Dyadic::ONE; 4]);
    assert_eq!(e.to_string(), "1 1 1 1");
}

#[test]
fn depth_zero_at_horizon_zero() {
    let e = exact_l_estimates(2, 0, 4, 0, 0.5).unwrap();
    assert_eq!((e.l1, e.l2), (Dyadic::ONE, Dyadic::ONE));
}

#[test]
fn diagonal_pairs_give_zero() {
    let q = OracleQuery::new(2, 2, 10, 6, 0.5);
    let e = exact_l_estimates_with(&q, PairSet::Diagonal).unwrap();
    assert_eq!(e.as_array(), [Dyadic::ZERO; 4]);
}

#[test]
fn three_symbols_still_give_one() {
    let e = exact_l_estimates(3, 1, 8, 5, 0.5).unwrap();
    assert_eq!(e.as_array(), [Dyadic::ONE; 4]);
}

#[test]
fn enumeration_matches_brute_force_pairs() {
    for (k, w) in [(2, 8), (3, 5)] {
        for m in 0..=2 {
            for horizon in 0..w - m {
                for tau in [0.25, 0.5, 0.9] {
                    let q = OracleQuery::new(k, m, w, horizon, tau);
                    let from = lyapnum::metric::tail_start(horizon, tau);
                    let e = exact_l_estimates_with(&q, PairSet::All).unwrap();
                    assert_eq!(
                        e.to_f64(),
                        brute_force(k, m, w, horizon, from),
                        "k={k} m={m} N={horizon} tau={tau}"
                    );
                }
            }
        }
    }
}

#[test]
fn closed_form_matches_enumeration() {
    for k in 2..=3 {
        let w = if k == 2 { 11 } else { 7 };
        for m in 0..=3 {
            for horizon in 0..w - m {
                let q = OracleQuery::new(k, m, w, horizon, 0.5);
                assert_eq!(
                    closed_form(&q).unwrap(),
                    exact_l_estimates_with(&q, PairSet::All).unwrap(),
                    "k={k} m={m} N={horizon}"
                );
            }
        }
    }
}

#[test]
fn monotone_in_horizon_and_depth() {
    let w = 11;
    for m in 0..=3 {
        for horizon in 1..w - m {
            let now = exact_l_estimates(2, m, w, horizon, 0.5).unwrap().as_array();
            let before = exact_l_estimates(2, m, w, horizon - 1, 0.5)
                .unwrap()
                .as_array();
            // the tail window start moves with N, so only the full-window values are monotone in N
            assert!(
                now[0] >= before[0] && now[1] >= before[1],
                "m={m} N={horizon}"
            );
            if m >= 1 && horizon + m < w {
                let shallower = exact_l_estimates(2, m - 1, w, horizon, 0.5)
                    .unwrap()
                    .as_array();
                for j in 0..4 {
                    assert!(now[j] <= shallower[j], "m={m} N={horizon} j={j}");
                }
            }
        }
    }
}

#[test]
fn exact_outputs_satisfy_the_doubling_bound() {
    for k in 2..=3 {
        let w = if k == 2 { 10 } else { 7 };
        for m in 0..=2 {
            for horizon in m + 1..7 - m {
                let e = exact_l_estimates(k, m, w, horizon, 0.5).unwrap();
                assert!(e.l2 <= e.l3.double(), "k={k} m={m} N={horizon}: {e}");
            }
        }
    }
}

#[test]
fn repeated_runs_are_identical() {
    let a = exact_l_estimates(2, 3, 13, 7, 0.5).unwrap();
    let b = exact_l_estimates(2, 3, 13, 7, 0.5).unwrap();
    assert_eq!(a, b);
}

#[test]
fn preconditions() {
    assert!(matches!(
        exact_l_estimates(1, 2, 12, 8, 0.5),
        Err(OracleError::Alphabet(1))
    ));
    assert!(matches!(
        exact_l_estimates(2, 2, 10, 8, 0.5),
        Err(OracleError::WordTooShort { .. })
    ));
    assert!(matches!(
        exact_l_estimates(2, 2, 40, 8, 0.5),
        Err(OracleError::TooLarge { .. })
    ));
    assert!(exact_l_estimates(2, 2, 12, 8, 1.0).is_err());
}

#[test]
fn cylinder_membership() {
    let c = CylinderSpec::new(vec![1, 0], 4, 2).unwrap();
    assert_eq!((c.depth(), c.word_len(), c.size()), (2, 6, 16));
    for i in 0..c.size() {
        assert!(c.contains(&c.completion(i)));
    }
    assert!(!c.contains(&SymbolicWord::new(vec![0, 0, 1, 1, 1, 1], 2).unwrap()));
    assert!(matches!(
        CylinderSpec::new(vec![2], 3, 2),
        Err(OracleError::PrefixSymbol { symbol: 2, .. })
    ));
}

#[test]
fn estimator_comparison_flags_under_sampling() {
    let mut cfg = EstimatorConfig::smoke();
    cfg.nbhd_count = 1;
    cfg.pair_count = 1;
    let c = oracle_vs_estimator(2, &cfg).unwrap();
    assert!(c.under_sampled);
    assert_eq!(c.exact.as_array(), [Dyadic::ONE; 4]);
}

#[test]
fn estimator_comparison_at_smoke_scale() {
    let c = oracle_vs_estimator(2, &EstimatorConfig::smoke()).unwrap();
    assert_eq!(c.exact.as_array(), [Dyadic::ONE; 4]);
    assert!(c.max_gap() <= 0.02, "{:?}", c.gaps);
    let c3 = oracle_vs_estimator(3, &EstimatorConfig::smoke()).unwrap();
    assert_eq!(c3.exact.as_array(), [Dyadic::ONE; 4]);
}
