//! Trajectory assembly: `X(t) = c Σ_k τ_k · e_k` with intertimes from [`crate::temporal`]
//! and directions from [`crate::angular`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angular::AngleSampler;
use crate::error::{domain, Result};
use crate::temporal::IntertimeSampler;

/// The parameter bundle shared by simulation and every closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlightParams {
    /// Ambient dimension, at least 2.
    pub d: usize,
    /// Projection dimension, `1 ≤ m ≤ d`.
    pub m: usize,
    /// Number of direction changes.
    pub n: usize,
    /// Drift exponent of the direction law.
    pub nu: f64,
    /// Speed.
    pub c: f64,
    /// Horizon.
    pub t: f64,
}

impl FlightParams {
    pub fn new(d: usize, m: usize, n: usize, nu: f64, c: f64, t: f64) -> Result<Self> {
        let p = FlightParams { d, m, n, nu, c, t };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return domain(format!("dimension d must be >= 2, got {}", self.d));
        }
        if self.m < 1 || self.m > self.d {
            return domain(format!("projection m={} must satisfy 1 <= m <= d={}", self.m, self.d));
        }
        if !(self.nu >= 0.0) || !self.nu.is_finite() {
            return domain(format!("nu must be a finite value >= 0, got {}", self.nu));
        }
        if !(self.c > 0.0) || !self.c.is_finite() {
            return domain(format!("speed c must be positive, got {}", self.c));
        }
        if !(self.t > 0.0) || !self.t.is_finite() {
            return domain(format!("horizon t must be positive, got {}", self.t));
        }
        Ok(())
    }

    /// Radius `ct` of the support ball.
    pub fn reach(&self) -> f64 {
        self.c * self.t
    }

    pub fn with_nu(self, nu: f64) -> Self {
        FlightParams { nu, ..self }
    }

    pub fn with_n(self, n: usize) -> Self {
        FlightParams { n, ..self }
    }

    pub fn with_m(self, m: usize) -> Self {
        FlightParams { m, ..self }
    }
}

/// One simulated path: `n + 2` breakpoints starting at the origin and their epochs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    breakpoints: Vec<Vec<f64>>,
    times: Vec<f64>,
}

impl Trajectory {
    pub fn breakpoints(&self) -> &[Vec<f64>] {
        &self.breakpoints
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn final_position(&self) -> &[f64] {
        self.breakpoints.last().expect("a trajectory has at least two breakpoints")
    }

    pub fn segments(&self) -> usize {
        self.breakpoints.len() - 1
    }
}

/// Reusable per-parameter sampling state; cheap to clone across threads.
#[derive(Debug, Clone)]
pub struct FlightSampler {
    params: FlightParams,
    angles: AngleSampler,
    times: Option<IntertimeSampler>,
}

impl FlightSampler {
    pub fn new(params: FlightParams) -> Result<Self> {
        params.validate()?;
        let times = if params.n >= 1 {
            Some(IntertimeSampler::new(params.n, params.d, params.nu, params.t)?)
        } else {
            None
        };
        Ok(FlightSampler { params, angles: AngleSampler::new(params.d, params.nu)?, times })
    }

    pub fn params(&self) -> &FlightParams {
        &self.params
    }

    fn draw_taus<R: Rng + ?Sized>(&self, rng: &mut R, taus: &mut [f64]) {
        match &self.times {
            Some(s) => s.sample_into(rng, taus),
            None => taus[0] = self.params.t,
        }
    }

    /// Final position only, written into `pos` (length `d`).
    pub fn sample_final<R: Rng + ?Sized>(&self, rng: &mut R, pos: &mut [f64]) {
        let p = &self.params;
        let mut taus = vec![0.0; p.n + 1];
        let mut dir = vec![0.0; p.d];
        self.draw_taus(rng, &mut taus);
        pos.iter_mut().for_each(|x| *x = 0.0);
        for &tau in &taus {
            self.angles.sample_direction(rng, &mut dir);
            let len = p.c * tau;
            for (x, e) in pos.iter_mut().zip(&dir) {
                *x += len * e;
            }
        }
    }

    /// Full trajectory. Consumes the random stream exactly like [`Self::sample_final`], so
    /// the final breakpoint is bit-identical to that method's output for the same stream.
    pub fn sample_trajectory<R: Rng + ?Sized>(&self, rng: &mut R) -> Trajectory {
        let p = &self.params;
        let mut taus = vec![0.0; p.n + 1];
        let mut dir = vec![0.0; p.d];
        self.draw_taus(rng, &mut taus);
        let mut breakpoints = Vec::with_capacity(p.n + 2);
        let mut times = Vec::with_capacity(p.n + 2);
        let mut pos = vec![0.0; p.d];
        let mut clock = 0.0;
        breakpoints.push(pos.clone());
        times.push(0.0);
        for (k, &tau) in taus.iter().enumerate() {
            self.angles.sample_direction(rng, &mut dir);
            let len = p.c * tau;
            for (x, e) in pos.iter_mut().zip(&dir) {
                *x += len * e;
            }
            clock = if k == p.n { p.t } else { clock + tau };
            breakpoints.push(pos.clone());
            times.push(clock);
        }
        Trajectory { breakpoints, times }
    }
}

/// Simulate one flight.
pub fn simulate_flight<R: Rng + ?Sized>(p: &FlightParams, rng: &mut R) -> Result<Trajectory> {
    Ok(FlightSampler::new(*p)?.sample_trajectory(rng))
}

/// First `m` coordinates of the final position.
pub fn project(tr: &Trajectory, m: usize) -> Result<Vec<f64>> {
    let fin = tr.final_position();
    if m < 1 || m > fin.len() {
        return domain(format!("projection m={m} must satisfy 1 <= m <= d={}", fin.len()));
    }
    Ok(fin[..m].to_vec())
}

/// Euclidean norm.
pub fn radial(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// The random stream of replicate `index` under `master_seed`.
pub fn replicate_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Map every replicate index through `f` with its own stream, in parallel, preserving order.
/// The output depends only on `master_seed`, never on the number of worker threads.
pub fn par_replicates<T, F>(count: usize, master_seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync + Send,
{
    (0..count as u64)
        .into_par_iter()
        .map(|i| f(&mut replicate_rng(master_seed, i)))
        .collect()
}

/// Final positions of `count` independent flights.
pub fn simulate_batch(p: &FlightParams, count: usize, master_seed: u64) -> Result<Vec<Vec<f64>>> {
    if count == 0 {
        return domain("count must be >= 1");
    }
    let sampler = FlightSampler::new(*p)?;
    Ok(par_replicates(count, master_seed, |rng| {
        let mut pos = vec![0.0; p.d];
        sampler.sample_final(rng, &mut pos);
        pos
    }))
}

/// Full trajectories of `count` independent flights; replicate `i` matches
/// `simulate_batch(p, count, seed)[i]` at its final breakpoint.
pub fn simulate_trajectories(p: &FlightParams, count: usize, master_seed: u64) -> Result<Vec<Trajectory>> {
    if count == 0 {
        return domain("count must be >= 1");
    }
    let sampler = FlightSampler::new(*p)?;
    Ok(par_replicates(count, master_seed, |rng| sampler.sample_trajectory(rng)))
}

/// Norms of the `m`-dimensional projections of `count` flights.
pub fn simulate_projected_radii(p: &FlightParams, count: usize, master_seed: u64) -> Result<Vec<f64>> {
    if count == 0 {
        return domain("count must be >= 1");
    }
    let sampler = FlightSampler::new(*p)?;
    Ok(par_replicates(count, master_seed, |rng| {
        let mut pos = vec![0.0; p.d];
        sampler.sample_final(rng, &mut pos);
        radial(&pos[..p.m])
    }))
}
