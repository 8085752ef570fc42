//! Randomizing the number of direction changes with a fractional Poisson law.

use serde::{Deserialize, Serialize};

use crate::analytic::projection::density_projection;
use crate::error::{domain, Result};
use crate::flight::FlightParams;
use crate::specfun::{ln_gamma_pos, mittag_leffler_wright};

/// Default truncation index for the mixture sum.
pub const DEFAULT_N_MAX: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureParams {
    /// Event rate `λ > 0`.
    pub lambda: f64,
    /// Flight parameters; `n` is ignored.
    pub base: FlightParams,
    /// Largest `n` kept in the mixture sum.
    pub n_max: usize,
}

impl MixtureParams {
    pub fn new(lambda: f64, base: FlightParams, n_max: usize) -> Result<Self> {
        let mp = MixtureParams { lambda, base, n_max };
        mp.validate()?;
        Ok(mp)
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return domain(format!("rate lambda must be positive, got {}", self.lambda));
        }
        if self.n_max < 1 {
            return domain("n_max must be >= 1");
        }
        Ok(())
    }

    /// `(α, β) = (ν + (d-1)/2, ν + d/2)`.
    pub fn ml_parameters(&self) -> (f64, f64) {
        let d = self.base.d as f64;
        (self.base.nu + 0.5 * (d - 1.0), self.base.nu + 0.5 * d)
    }
}

/// Which normalization of the fractional Poisson law to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PmfForm {
    /// `(λt)^n / (n! Γ(αn+β) E_{α,β}(λt))`, which sums to one.
    #[default]
    Normalized,
    /// The same expression without `n!`. Kept for comparison; it does not sum to one.
    WithoutFactorial,
}

/// `P(N = n)` in the normalized form.
pub fn fractional_poisson_pmf(mp: &MixtureParams, n: usize) -> Result<f64> {
    fractional_poisson_pmf_with(mp, n, PmfForm::Normalized)
}

pub fn fractional_poisson_pmf_with(mp: &MixtureParams, n: usize, form: PmfForm) -> Result<f64> {
    mp.validate()?;
    let (alpha, beta) = mp.ml_parameters();
    let x = mp.lambda * mp.base.t;
    let e = mittag_leffler_wright(alpha, beta, x)?;
    let nf = n as f64;
    let mut ln = nf * x.ln() - ln_gamma_pos(alpha * nf + beta);
    if form == PmfForm::Normalized {
        ln -= ln_gamma_pos(nf + 1.0);
    }
    Ok(ln.exp() / e)
}

/// Mixture density together with a bound on the truncated tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureDensity {
    pub value: f64,
    /// Upper bound on `Σ_{n > n_max}` of the renormalized weights times the conditional
    /// density's maximum (its value at the origin).
    pub tail_bound: f64,
}

// Largest value of the projected density: the origin, since q >= 0 when m < d.
fn peak_density(p: &FlightParams, n: usize) -> Result<f64> {
    density_projection(&p.with_n(n), &vec![0.0; p.m])
}

/// Density of the projection when `n` is fractional-Poisson distributed, conditioned on
/// `n ≥ 1` (the conditional law is only defined there): the weights `pmf(n)` are divided
/// by `1 - pmf(0)`.
pub fn unconditional_density_projection(mp: &MixtureParams, x: &[f64]) -> Result<MixtureDensity> {
    mp.validate()?;
    let p = &mp.base;
    let norm = 1.0 - fractional_poisson_pmf(mp, 0)?;
    let mut value = 0.0;
    for n in 1..=mp.n_max {
        let w = fractional_poisson_pmf(mp, n)?;
        if w == 0.0 {
            break;
        }
        value += w * density_projection(&p.with_n(n), x)?;
    }
    let mut tail = 0.0;
    let mut n = mp.n_max + 1;
    loop {
        let term = fractional_poisson_pmf(mp, n)? * peak_density(p, n)?;
        tail += term;
        if term <= 1e-18 * tail.max(f64::MIN_POSITIVE) || term == 0.0 || n > mp.n_max + 10_000 {
            break;
        }
        n += 1;
    }
    Ok(MixtureDensity { value: value / norm, tail_bound: tail / norm })
}
