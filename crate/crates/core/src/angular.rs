//! The sin-power direction law `g_{d,ν}` on the unit sphere of `ℝ^d`.
//!
//! In hyperspherical angles `(θ₁, …, θ_{d-2}, φ)` the density factorizes as
//! `Π_j sin^{2ν+d-1-j} θ_j · sin^{2ν} φ`, so the angles are independent and each can be
//! drawn exactly from a symmetric Beta variate of `cos θ`.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::specfun::ln_gamma_pos;

/// One direction in hyperspherical angles. `thetas` has `d - 2` entries in `[0, π]`,
/// `phi` lies in `[0, 2π]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleVector {
    thetas: Vec<f64>,
    phi: f64,
}

impl AngleVector {
    pub fn new(thetas: Vec<f64>, phi: f64) -> Result<Self> {
        if let Some(t) = thetas.iter().find(|t| !(0.0..=PI).contains(*t)) {
            return domain(format!("colatitude {t} outside [0, pi]"));
        }
        if !(0.0..=2.0 * PI).contains(&phi) {
            return domain(format!("azimuth {phi} outside [0, 2pi]"));
        }
        Ok(AngleVector { thetas, phi })
    }

    pub fn dim(&self) -> usize {
        self.thetas.len() + 2
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// A unit vector of `ℝ^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    components: Vec<f64>,
}

impl Direction {
    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.components
    }
}

fn check_nu(nu: f64) -> Result<()> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return domain(format!("nu must be a finite value >= 0, got {nu}"));
    }
    Ok(())
}

// sin^p with the convention 0^0 = 1; |sin| keeps non-integer powers real
#[inline]
fn sin_pow(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else {
        x.sin().abs().powf(p)
    }
}

/// `g_{d,ν}` at the given angles.
pub fn angular_density(a: &AngleVector, nu: f64) -> Result<f64> {
    check_nu(nu)?;
    let d = a.dim() as f64;
    let ln_norm =
        ln_gamma_pos(nu + 0.5 * d) - (2.0f64).ln() - 0.5 * (d - 1.0) * PI.ln() - ln_gamma_pos(nu + 0.5);
    let mut value = ln_norm.exp() * sin_pow(a.phi, 2.0 * nu);
    for (j, &theta) in a.thetas.iter().enumerate() {
        value *= sin_pow(theta, 2.0 * nu + d - 2.0 - j as f64);
    }
    Ok(value)
}

/// Joint density of the first `m` angles when `1 ≤ m < d`.
///
/// For `m = d - 1` the last angle is the azimuth and this is the full density. Otherwise all
/// `m` angles are colatitudes in `[0, π]` and the remaining ones are integrated out.
pub fn marginal_angular_density(angles: &[f64], d: usize, m: usize, nu: f64) -> Result<f64> {
    check_nu(nu)?;
    if d < 2 {
        return domain(format!("dimension must be >= 2, got {d}"));
    }
    if m == 0 || m >= d {
        return domain(format!("marginal order m={m} must satisfy 1 <= m < d={d}"));
    }
    if angles.len() != m {
        return domain(format!("expected {m} angles, got {}", angles.len()));
    }
    if m == d - 1 {
        let (phi, thetas) = angles.split_last().expect("m >= 1");
        return angular_density(&AngleVector::new(thetas.to_vec(), *phi)?, nu);
    }
    if let Some(t) = angles.iter().find(|t| !(0.0..=PI).contains(*t)) {
        return domain(format!("colatitude {t} outside [0, pi]"));
    }
    let (df, mf) = (d as f64, m as f64);
    let ln_norm = ln_gamma_pos(nu + 0.5 * df) - 0.5 * mf * PI.ln() - ln_gamma_pos(nu + 0.5 * (df - mf));
    let mut value = ln_norm.exp();
    for (j, &theta) in angles.iter().enumerate() {
        value *= sin_pow(theta, 2.0 * nu + df - 2.0 - j as f64);
    }
    Ok(value)
}

/// Exact sampler for `g_{d,ν}`. Holds one Beta law per colatitude plus the azimuth law,
/// so building it once and drawing many times avoids re-validating parameters.
#[derive(Debug, Clone)]
pub struct AngleSampler {
    thetas: Vec<Beta<f64>>,
    phi: Beta<f64>,
}

impl AngleSampler {
    pub fn new(d: usize, nu: f64) -> Result<Self> {
        check_nu(nu)?;
        if d < 2 {
            return domain(format!("dimension must be >= 2, got {d}"));
        }
        let beta = |shape: f64| Beta::new(shape, shape).expect("shape is positive");
        let thetas = (1..=d - 2)
            .map(|j| {
                let p = 2.0 * nu + (d - 1 - j) as f64;
                beta(0.5 * (p + 1.0))
            })
            .collect();
        Ok(AngleSampler { thetas, phi: beta(nu + 0.5) })
    }

    pub fn dim(&self) -> usize {
        self.thetas.len() + 2
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> AngleVector {
        let thetas = self.thetas.iter().map(|b| colatitude(b.sample(rng))).collect();
        let half = colatitude(self.phi.sample(rng));
        let phi = if rng.random::<bool>() { half } else { 2.0 * PI - half };
        AngleVector { thetas, phi }
    }

    /// Draw straight into a unit vector, skipping the intermediate [`AngleVector`].
    pub fn sample_direction<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        let d = self.dim();
        debug_assert_eq!(out.len(), d);
        let mut prefix = 1.0;
        for (i, b) in self.thetas.iter().enumerate() {
            let c = 1.0 - 2.0 * b.sample(rng);
            out[i] = prefix * c;
            prefix *= (1.0 - c * c).max(0.0).sqrt();
        }
        let cphi = 1.0 - 2.0 * self.phi.sample(rng);
        let sphi = (1.0 - cphi * cphi).max(0.0).sqrt();
        let sphi = if rng.random::<bool>() { sphi } else { -sphi };
        out[d - 2] = prefix * cphi;
        out[d - 1] = prefix * sphi;
    }
}

// cos θ = 1 - 2B
#[inline]
fn colatitude(b: f64) -> f64 {
    (1.0 - 2.0 * b).clamp(-1.0, 1.0).acos()
}

/// One draw from `g_{d,ν}`.
pub fn sample_angles<R: Rng + ?Sized>(d: usize, nu: f64, rng: &mut R) -> Result<AngleVector> {
    Ok(AngleSampler::new(d, nu)?.sample(rng))
}

/// Map hyperspherical angles to Cartesian coordinates:
/// `x₁ = cos θ₁`, `x₂ = sin θ₁ cos θ₂`, …, `x_{d-1} = Π sin θ · cos φ`, `x_d = Π sin θ · sin φ`.
pub fn angles_to_direction(a: &AngleVector) -> Direction {
    let d = a.dim();
    let mut components = vec![0.0; d];
    let mut prefix = 1.0;
    for (i, &theta) in a.thetas.iter().enumerate() {
        let (s, c) = theta.sin_cos();
        components[i] = prefix * c;
        prefix *= s;
    }
    let (s, c) = a.phi.sin_cos();
    components[d - 2] = prefix * c;
    components[d - 1] = prefix * s;
    Direction { components }
}
