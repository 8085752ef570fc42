//! Monte Carlo goodness-of-fit: empirical projected radius against the closed-form CDF,
//! and the empirical characteristic function against the `ν = 1` closed form.

use serde::{Deserialize, Serialize};

use crate::analytic::{cdf_radial_sorted, cf_nu1};
use crate::error::{domain, Result};
use crate::flight::{simulate_batch, simulate_projected_radii, FlightParams};

/// KS threshold used when none is given.
pub const DEFAULT_KS_THRESHOLD: f64 = 0.01;
/// Standard errors allowed between an empirical and a closed-form CF value.
pub const CF_SE_LIMIT: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    /// Parameters of the simulated flights.
    pub params: FlightParams,
    /// Parameters of the CDF the sample was tested against.
    pub model: FlightParams,
    pub sample_count: usize,
    pub ks_distance: f64,
    pub threshold: f64,
    pub passed: bool,
}

/// Exact two-sided KS distance between a sorted sample and CDF values at those points.
pub fn ks_distance_sorted(cdf_at_sample: &[f64]) -> f64 {
    let n = cdf_at_sample.len() as f64;
    cdf_at_sample
        .iter()
        .enumerate()
        .map(|(i, &f)| (f - i as f64 / n).max((i + 1) as f64 / n - f))
        .fold(0.0, f64::max)
}

/// Simulate `p`, test the projected radii against the CDF of `p` itself.
pub fn gof_radial(p: &FlightParams, sample_count: usize, master_seed: u64, threshold: f64) -> Result<GofReport> {
    gof_radial_against(p, p, sample_count, master_seed, threshold)
}

/// Simulate `p`, test against the CDF of `model`. With a mismatched model this is a
/// negative control and is expected to fail.
pub fn gof_radial_against(
    p: &FlightParams,
    model: &FlightParams,
    sample_count: usize,
    master_seed: u64,
    threshold: f64,
) -> Result<GofReport> {
    if p.m >= p.d || p.n < 1 {
        return domain(format!("radial GoF needs m < d and n >= 1, got m={}, d={}, n={}", p.m, p.d, p.n));
    }
    if !(threshold > 0.0) {
        return domain("threshold must be positive");
    }
    let mut radii = simulate_projected_radii(p, sample_count, master_seed)?;
    radii.sort_by(f64::total_cmp);
    let cdf = cdf_radial_sorted(model, &radii)?;
    let ks = ks_distance_sorted(&cdf);
    Ok(GofReport {
        params: *p,
        model: *model,
        sample_count,
        ks_distance: ks,
        threshold,
        passed: ks < threshold,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CfPoint {
    pub alpha: Vec<f64>,
    pub theory: f64,
    pub empirical_re: f64,
    pub empirical_im: f64,
    pub se_re: f64,
    pub se_im: f64,
    /// `(empirical_re - theory) / se_re`.
    pub z_re: f64,
    /// `empirical_im / se_im`.
    pub z_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CfReport {
    pub params: FlightParams,
    pub sample_count: usize,
    pub points: Vec<CfPoint>,
    /// Largest `|z|` over real and imaginary parts.
    pub max_deviation: f64,
    pub threshold: f64,
    pub passed: bool,
}

fn standardized(diff: f64, se: f64) -> f64 {
    if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY.copysign(diff)
    }
}

/// Empirical CF of simulated full-dimensional flights against [`cf_nu1`].
pub fn gof_cf(p: &FlightParams, alphas: &[Vec<f64>], sample_count: usize, master_seed: u64) -> Result<CfReport> {
    if p.nu != 1.0 || p.m != p.d || p.n < 1 {
        return domain("CF GoF needs nu = 1, m = d and n >= 1");
    }
    if sample_count < 2 {
        return domain("CF GoF needs at least two samples");
    }
    for a in alphas {
        if a.len() != p.d {
            return domain(format!("frequency vector has length {}, expected {}", a.len(), p.d));
        }
    }
    let positions = simulate_batch(p, sample_count, master_seed)?;
    let n = sample_count as f64;
    let mut points = Vec::with_capacity(alphas.len());
    for alpha in alphas {
        let theory = cf_nu1(p, alpha)?;
        // sequential sums keep the result independent of the thread count
        let (mut sc, mut sc2, mut ss, mut ss2) = (0.0, 0.0, 0.0, 0.0);
        for x in &positions {
            let phase: f64 = alpha.iter().zip(x).map(|(a, x)| a * x).sum();
            let (s, c) = phase.sin_cos();
            sc += c;
            sc2 += c * c;
            ss += s;
            ss2 += s * s;
        }
        let (mc, ms) = (sc / n, ss / n);
        let var_c = ((sc2 - n * mc * mc) / (n - 1.0)).max(0.0);
        let var_s = ((ss2 - n * ms * ms) / (n - 1.0)).max(0.0);
        let (se_re, se_im) = ((var_c / n).sqrt(), (var_s / n).sqrt());
        points.push(CfPoint {
            alpha: alpha.clone(),
            theory,
            empirical_re: mc,
            empirical_im: ms,
            se_re,
            se_im,
            z_re: standardized(mc - theory, se_re),
            z_im: standardized(ms, se_im),
        });
    }
    let max_deviation = points.iter().map(|q| q.z_re.abs().max(q.z_im.abs())).fold(0.0, f64::max);
    Ok(CfReport {
        params: *p,
        sample_count,
        points,
        max_deviation,
        threshold: CF_SE_LIMIT,
        passed: max_deviation <= CF_SE_LIMIT,
    })
}
