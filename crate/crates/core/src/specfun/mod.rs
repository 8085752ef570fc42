//! Special-function kernel: Gamma, real-order Bessel `J`, the `k!`-bearing
//! Mittag-Leffler series, odd double factorials and the falling-factorial
//! coefficient solver.
//!
//! Every function here is pure.

mod bessel;
mod coeffs;
mod gamma;
mod mittag;

pub use bessel::{bessel_j, normalized_bessel, SERIES_SWITCH};
pub use coeffs::{
    double_factorial_odd, falling_factorial_coeffs, odd_product, CoeffTable, MAX_COEFF_ORDER,
};
pub use gamma::{gamma, ln_gamma};
pub use mittag::mittag_leffler_wright;

pub(crate) use bessel::{bessel_j_unchecked, normalized_bessel_unchecked};
pub(crate) use gamma::{gamma_pos, ln_gamma_pos};

/// Binomial coefficient as `f64`.
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
