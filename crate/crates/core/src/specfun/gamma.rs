//! Gamma and log-gamma for positive real arguments (Lanczos, g = 7, nine terms).

use std::f64::consts::PI;

use crate::error::{domain, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

/// Largest argument for which `Γ(x)` is finite in `f64`.
const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

// Lanczos series for Γ(x + 1), returned as (a(x), t) with t = x + g + 1/2.
#[inline]
fn lanczos_sum(x: f64) -> (f64, f64) {
    let mut a = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (a, x + LANCZOS_G + 0.5)
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    if x > GAMMA_MAX_ARG {
        return f64::INFINITY;
    }
    // exact on small integers
    if x == x.floor() && x <= 23.0 {
        return (1..x as u64).fold(1.0, |acc, k| acc * k as f64);
    }
    let (a, t) = lanczos_sum(x - 1.0);
    // split the power so that t^(x - 1/2) does not overflow before e^-t applies
    let half = t.powf(0.5 * (x - 0.5));
    (2.0 * PI).sqrt() * half * (-t).exp() * half * a
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma_unchecked(1.0 - x);
    }
    if x < 15.0 {
        return gamma_unchecked(x).ln();
    }
    // Stirling series; truncation below 1e-17 for x >= 15
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2
                * (1.0 / 360.0
                    - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 * (1.0 / 1188.0)))));
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + series
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("gamma requires a positive finite argument, got {x}"));
    }
    Ok(gamma_unchecked(x))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("ln_gamma requires a positive finite argument, got {x}"));
    }
    Ok(ln_gamma_unchecked(x))
}

// Crate-internal fast paths; callers guarantee positivity.
#[inline]
pub(crate) fn gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0, "gamma_pos({x})");
    gamma_unchecked(x)
}

#[inline]
pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma_pos({x})");
    ln_gamma_unchecked(x)
}
