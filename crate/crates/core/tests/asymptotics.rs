use irv_commlab::fooling::{FoolingSpec, asymptotic_estimate, log_cardinality};

fn ratios(m: usize) -> (f64, f64) {
    let spec = FoolingSpec::irv(m, 1).unwrap();
    let est = asymptotic_estimate(&spec);
    let exact = log_cardinality(&spec).unwrap();
    (exact.ratio(&est.leading_term), est.finite_sum.ratio(&est.leading_term))
}

// The exact IRV ratio approaches 1 from above, so it falls with m while the
// finite sum climbs toward the leading term from below.
#[test]
fn irv_ratio_falls_toward_one() {
    let rows: Vec<(f64, f64)> = (3..=12).map(|e| ratios(1 << e)).collect();
    for w in rows.windows(2) {
        assert!(w[1].0 < w[0].0, "{rows:?}");
        assert!(w[1].1 > w[0].1, "{rows:?}");
    }
    assert!(rows.iter().all(|r| r.0 > 1.0 && r.1 < 1.0));
    assert!((rows[0].0 - 1.674485).abs() < 1e-4);
}

#[test]
fn sp_ratio_approaches_one() {
    let gaps: Vec<f64> = (2..=12)
        .map(|e| {
            let spec = FoolingSpec::sp(1 << e, 3).unwrap();
            let est = asymptotic_estimate(&spec);
            (log_cardinality(&spec).unwrap().ratio(&est.leading_term) - 1.0).abs()
        })
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}
