use crate::error::{domain, Result};
use crate::specfun::gamma::ln_gamma_pos;

const MAX_TERMS: usize = 100_000;

/// Wright-type Mittag-Leffler series `E_{α,β}(x) = Σ_k x^k / (k! Γ(αk + β))`.
///
/// This is **not** the classical two-parameter Mittag-Leffler function (which has no
/// `k!`). The `k!`-bearing form is the one that normalizes the fractional Poisson law
/// in [`crate::analytic::fractional_poisson_pmf`].
///
/// Summation stops once the remaining tail is provably below `1e-16` relative to the
/// partial sum (successive term ratios are below one half and decreasing).
pub fn mittag_leffler_wright(alpha: f64, beta: f64, x: f64) -> Result<f64> {
    if !(alpha > 0.0) || !(beta > 0.0) {
        return domain(format!(
            "Mittag-Leffler parameters must be positive, got alpha={alpha}, beta={beta}"
        ));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("Mittag-Leffler argument must be finite and >= 0, got {x}"));
    }
    Ok(mittag_leffler_terms(alpha, beta, x, None))
}

// Shared by the public entry point and tests that pin the term count.
pub(crate) fn mittag_leffler_terms(alpha: f64, beta: f64, x: f64, fixed: Option<usize>) -> f64 {
    let lnx = if x > 0.0 { x.ln() } else { f64::NEG_INFINITY };
    let ln_term = |k: usize| -> f64 {
        let kf = k as f64;
        let pow = if k == 0 { 0.0 } else { kf * lnx };
        pow - ln_gamma_pos(kf + 1.0) - ln_gamma_pos(alpha * kf + beta)
    };
    let mut sum = 0.0;
    let mut prev = f64::NAN;
    let limit = fixed.unwrap_or(MAX_TERMS);
    for k in 0..limit {
        let term = ln_term(k).exp();
        sum += term;
        if fixed.is_none() && k > 0 {
            let ratio = term / prev;
            if term == 0.0 || (ratio < 0.5 && term * ratio / (1.0 - ratio) <= 1e-16 * sum) {
                break;
            }
        }
        prev = term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma_pos;

    #[test]
    fn value_at_zero() {
        for &beta in &[0.5, 1.0, 2.5] {
            let v = mittag_leffler_wright(1.3, beta, 0.0).unwrap();
            assert!((v - 1.0 / gamma_pos(beta)).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(mittag_leffler_wright(0.0, 1.0, 1.0).is_err());
        assert!(mittag_leffler_wright(1.0, -1.0, 1.0).is_err());
        assert!(mittag_leffler_wright(1.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn monotone_in_argument() {
        let mut last = 0.0;
        for i in 0..50 {
            let v = mittag_leffler_wright(1.5, 2.0, i as f64 * 0.2).unwrap();
            assert!(v > last);
            last = v;
        }
    }

    #[test]
    fn doubling_terms_changes_nothing() {
        for &(a, b, x) in &[(0.5, 1.0, 1.0), (1.5, 2.0, 5.0), (2.5, 3.0, 30.0)] {
            let auto = mittag_leffler_wright(a, b, x).unwrap();
            let fixed = mittag_leffler_terms(a, b, x, Some(200));
            let doubled = mittag_leffler_terms(a, b, x, Some(400));
            assert!(((auto - doubled) / doubled).abs() < 1e-14, "{a} {b} {x}");
            assert_eq!(fixed, doubled);
        }
    }
}
