use driftflight::flight::FlightParams;
use driftflight::validation::{
    default_cf_grid, gof_cf, gof_radial, gof_radial_against, run_suite, IdentityCase, SuiteConfig,
    DEFAULT_KS_THRESHOLD,
};

fn params(d: usize, m: usize, n: usize, nu: f64) -> FlightParams {
    FlightParams::new(d, m, n, nu, 1.0, 1.0).unwrap()
}

#[test]
fn radial_examples() {
    let r = gof_radial(&params(3, 2, 2, 1.0), 100_000, 1, DEFAULT_KS_THRESHOLD).unwrap();
    assert!(r.passed, "{}", r.ks_distance);
    let r = gof_radial(&params(2, 1, 1, 0.0), 100_000, 2, DEFAULT_KS_THRESHOLD).unwrap();
    assert!(r.passed, "{}", r.ks_distance);
    assert_eq!(r.passed, r.ks_distance < r.threshold);
}

#[test]
fn mismatched_drift_is_rejected() {
    let sim = params(3, 2, 2, 1.0);
    let r = gof_radial_against(&sim, &sim.with_nu(0.0), 100_000, 3, DEFAULT_KS_THRESHOLD).unwrap();
    assert!(r.ks_distance > 0.05, "{}", r.ks_distance);
    assert!(!r.passed);
}

#[test]
fn gof_is_deterministic() {
    let p = params(4, 2, 3, 0.5);
    let a = gof_radial(&p, 5_000, 9, 0.05).unwrap();
    let b = gof_radial(&p, 5_000, 9, 0.05).unwrap();
    assert_eq!(a, b);
    let cf = &default_cf_grid(2_000)[0];
    assert_eq!(
        gof_cf(&cf.params, &cf.alphas, 2_000, 4).unwrap(),
        gof_cf(&cf.params, &cf.alphas, 2_000, 4).unwrap()
    );
}

#[test]
fn identity_metrics_ignore_the_seed() {
    let mut a = SuiteConfig::full(1);
    a.radial.clear();
    a.cf.clear();
    let mut b = a.clone();
    b.master_seed = 2;
    let (ra, rb) = (run_suite(&a), run_suite(&b));
    assert!(ra.success);
    for (x, y) in ra.checks.iter().zip(&rb.checks) {
        assert_eq!(x.metric.to_bits(), y.metric.to_bits());
    }
}

#[test]
fn suite_serializes_the_report_schema() {
    let mut cfg = SuiteConfig::empty(0);
    cfg.identities = SuiteConfig::full(0).identities.into_iter().take(2).collect::<Vec<IdentityCase>>();
    let json = serde_json::to_value(run_suite(&cfg)).unwrap();
    for check in json["checks"].as_array().unwrap() {
        for key in ["check_id", "params", "metric", "threshold", "passed"] {
            assert!(check.get(key).is_some(), "{key}");
        }
    }
}
