//! Rescaled Dirichlet law of the intertimes `τ₁ … τ_{n+1}` on the simplex `Σ τ_k = t`,
//! every parameter equal to `2ν + d - 1`.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::specfun::ln_gamma_pos;

/// `n + 1` waiting times that add up to the horizon `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntertimeVector {
    taus: Vec<f64>,
    t: f64,
}

impl IntertimeVector {
    /// Build from the `n` free coordinates; the last waiting time is the residual
    /// `t - Σ τ_k`, so the sum is exact by construction. Coordinates off the open simplex
    /// are kept as given and give zero density.
    pub fn from_free(free: &[f64], t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return domain(format!("horizon must be positive, got {t}"));
        }
        if free.is_empty() {
            return domain("at least one free intertime is required");
        }
        let mut taus = free.to_vec();
        taus.push(t - free.iter().sum::<f64>());
        Ok(IntertimeVector { taus, t })
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn horizon(&self) -> f64 {
        self.t
    }

    /// Number of direction changes, one fewer than the number of waiting times.
    pub fn changes(&self) -> usize {
        self.taus.len() - 1
    }
}

/// Joint density of `(τ₁, …, τ_n)`:
/// `Γ((n+1)a) / Γ(a)^{n+1} · Π τ_k^{a-1} / t^{(n+1)a - 1}` with `a = 2ν + d - 1`.
/// Zero off the open simplex.
pub fn intertime_density(v: &IntertimeVector, d: usize, nu: f64) -> Result<f64> {
    if d < 2 {
        return domain(format!("dimension must be >= 2, got {d}"));
    }
    if !(nu >= 0.0) || !nu.is_finite() {
        return domain(format!("nu must be a finite value >= 0, got {nu}"));
    }
    if v.taus.iter().any(|&tau| !(tau > 0.0)) {
        return Ok(0.0);
    }
    let a = 2.0 * nu + d as f64 - 1.0;
    let k = v.taus.len() as f64;
    let ln = ln_gamma_pos(k * a) - k * ln_gamma_pos(a) + (a - 1.0) * v.taus.iter().map(|x| x.ln()).sum::<f64>()
        - (k * a - 1.0) * v.t.ln();
    Ok(ln.exp())
}

/// Sampler for the rescaled Dirichlet: `n + 1` independent `Gamma(a, 1)` draws normalized to `t`.
#[derive(Debug, Clone)]
pub struct IntertimeSampler {
    n: usize,
    t: f64,
    gamma: Gamma<f64>,
}

impl IntertimeSampler {
    pub fn new(n: usize, d: usize, nu: f64, t: f64) -> Result<Self> {
        if n < 1 {
            return domain("the intertime law needs n >= 1");
        }
        if d < 2 {
            return domain(format!("dimension must be >= 2, got {d}"));
        }
        if !(nu >= 0.0) || !nu.is_finite() {
            return domain(format!("nu must be a finite value >= 0, got {nu}"));
        }
        if !(t > 0.0) || !t.is_finite() {
            return domain(format!("horizon must be positive, got {t}"));
        }
        let a = 2.0 * nu + d as f64 - 1.0;
        Ok(IntertimeSampler { n, t, gamma: Gamma::new(a, 1.0).expect("shape >= 1") })
    }

    /// Fill `out` (length `n + 1`) with one draw; the last entry is the residual.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.n + 1);
        let mut total = 0.0;
        for g in out.iter_mut() {
            *g = self.gamma.sample(rng);
            total += *g;
        }
        let scale = self.t / total;
        let mut used = 0.0;
        for g in out[..self.n].iter_mut() {
            *g *= scale;
            used += *g;
        }
        out[self.n] = self.t - used;
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> IntertimeVector {
        let mut taus = vec![0.0; self.n + 1];
        self.sample_into(rng, &mut taus);
        IntertimeVector { taus, t: self.t }
    }
}

/// One draw of the intertimes.
pub fn sample_intertimes<R: Rng + ?Sized>(n: usize, d: usize, nu: f64, t: f64, rng: &mut R) -> Result<IntertimeVector> {
    Ok(IntertimeSampler::new(n, d, nu, t)?.sample(rng))
}
