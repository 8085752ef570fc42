//! Law of the projection `X_m^d(t)` onto the first `m` coordinates.
//!
//! With `K = (n+1)(2ν+d-1)/2` the projection is isotropic with density proportional to
//! `(c²t² - ‖x‖²)^q`, `q = K - (m+1)/2`, and characteristic function `Λ_{K-1/2}(ct‖α‖)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::flight::FlightParams;
use crate::quad::{integrate, Tolerance};
use crate::specfun::{binomial, ln_gamma_pos, normalized_bessel_unchecked};

/// Tolerance on `|q - round(q)|` for using the finite-sum CDF.
pub const INTEGER_Q_TOL: f64 = 1e-9;

/// Frequency vector paired with the flight parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CfQuery {
    pub params: FlightParams,
    pub alpha: Vec<f64>,
}

impl CfQuery {
    pub fn new(params: FlightParams, alpha: Vec<f64>) -> Result<Self> {
        params.validate()?;
        if alpha.len() != params.m {
            return domain(format!(
                "frequency vector has length {}, expected m = {}",
                alpha.len(),
                params.m
            ));
        }
        Ok(CfQuery { params, alpha })
    }

    pub fn norm(&self) -> f64 {
        crate::flight::radial(&self.alpha)
    }
}

/// `K = (n+1)(2ν+d-1)/2`.
pub fn shape_k(p: &FlightParams) -> f64 {
    0.5 * (p.n as f64 + 1.0) * (2.0 * p.nu + p.d as f64 - 1.0)
}

/// Boundary exponent `q = K - (m+1)/2`.
pub fn boundary_exponent(p: &FlightParams) -> f64 {
    shape_k(p) - 0.5 * (p.m as f64 + 1.0)
}

fn require_projection(p: &FlightParams) -> Result<()> {
    p.validate()?;
    if p.n < 1 {
        return domain("closed forms need at least one change of direction (n >= 1)");
    }
    if p.m >= p.d {
        return domain(format!("projection dimension m={} must be below d={}", p.m, p.d));
    }
    Ok(())
}

/// Characteristic function of the projection, `Γ(K+1/2) (2/z)^{K-1/2} J_{K-1/2}(z)` with
/// `z = ct‖α‖`. The value depends on `α` only through its norm.
pub fn cf_projection(q: &CfQuery) -> Result<f64> {
    let p = &q.params;
    p.validate()?;
    if p.n < 1 {
        return domain("closed forms need at least one change of direction (n >= 1)");
    }
    if q.alpha.len() != p.m {
        return domain(format!("frequency vector has length {}, expected m = {}", q.alpha.len(), p.m));
    }
    let z = p.reach() * q.norm();
    Ok(normalized_bessel_unchecked(shape_k(p) - 0.5, z))
}

// Shared isotropic density with shape K in dimension m, evaluated at radius r.
fn isotropic_density(k: f64, m: usize, ct: f64, r: f64) -> f64 {
    if !(r < ct) {
        return 0.0;
    }
    let mf = m as f64;
    let q = k - 0.5 * (mf + 1.0);
    let rho = r / ct;
    let ln_c = ln_gamma_pos(k + 0.5) - ln_gamma_pos(q + 1.0) - 0.5 * mf * PI.ln() - mf * ct.ln();
    ln_c.exp() * (1.0 - rho * rho).powf(q)
}

fn check_point(x: &[f64], m: usize) -> Result<f64> {
    if x.len() != m {
        return domain(format!("point has {} coordinates, expected m = {m}", x.len()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return domain("point coordinates must be finite");
    }
    Ok(crate::flight::radial(x))
}

/// Density of `X_m^d(t)` at `x` (length `m < d`); zero outside the open ball of radius `ct`.
pub fn density_projection(p: &FlightParams, x: &[f64]) -> Result<f64> {
    require_projection(p)?;
    let r = check_point(x, p.m)?;
    Ok(isotropic_density(shape_k(p), p.m, p.reach(), r))
}

/// Density of the uniform-direction flight (`ν = 0`) in any dimension `1 ≤ m ≤ d`,
/// including the full space `m = d`, where the flight is isotropic.
pub fn density_uniform(p: &FlightParams, x: &[f64]) -> Result<f64> {
    p.validate()?;
    if p.nu != 0.0 {
        return domain(format!("the uniform-direction density needs nu = 0, got {}", p.nu));
    }
    if p.n < 1 {
        return domain("closed forms need at least one change of direction (n >= 1)");
    }
    let r = check_point(x, p.m)?;
    Ok(isotropic_density(shape_k(p), p.m, p.reach(), r))
}

/// Density of `R = ‖X_m^d(t)‖` on `(0, ct)`; zero elsewhere.
pub fn radial_density_projection(p: &FlightParams, r: f64) -> Result<f64> {
    require_projection(p)?;
    let ct = p.reach();
    if !(r > 0.0 && r < ct) {
        return Ok(0.0);
    }
    let mf = p.m as f64;
    let k = shape_k(p);
    let q = k - 0.5 * (mf + 1.0);
    let rho = r / ct;
    let ln_c = (2.0f64).ln() + ln_gamma_pos(k + 0.5) - ln_gamma_pos(q + 1.0) - ln_gamma_pos(0.5 * mf) - ct.ln();
    Ok(ln_c.exp() * rho.powf(mf - 1.0) * (1.0 - rho * rho).powf(q))
}

/// Whether `q` is a non-negative integer within [`INTEGER_Q_TOL`], so the CDF has a finite-sum form.
pub fn has_finite_sum_cdf(p: &FlightParams) -> bool {
    let q = boundary_exponent(p);
    q >= -INTEGER_Q_TOL && (q - q.round()).abs() < INTEGER_Q_TOL
}

/// CDF of the projected radius, `P(‖X_m^d(t)‖ < r)`.
///
/// Uses the exact binomial sum when `q` is a non-negative integer and adaptive quadrature
/// of the radial density otherwise.
pub fn cdf_radial_projection(p: &FlightParams, r: f64) -> Result<f64> {
    require_projection(p)?;
    if has_finite_sum_cdf(p) {
        Ok(cdf_finite_sum(p, r))
    } else {
        cdf_quadrature(p, r)
    }
}

/// The finite-sum branch, valid only when `q` is a non-negative integer.
pub fn cdf_finite_sum(p: &FlightParams, r: f64) -> f64 {
    let ct = p.reach();
    if r <= 0.0 {
        return 0.0;
    }
    if r >= ct {
        return 1.0;
    }
    let q = boundary_exponent(p).round() as usize;
    let half_m = 0.5 * p.m as f64;
    let rho = r / ct;
    let lead = (ln_gamma_pos(q as f64 + half_m + 1.0) - ln_gamma_pos(q as f64 + 1.0) - ln_gamma_pos(half_m)).exp();
    let rho2 = rho * rho;
    let mut sum = 0.0;
    let mut pow = rho.powf(p.m as f64);
    for k in 0..=q {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial(q, k) * pow / (k as f64 + half_m);
        pow *= rho2;
    }
    (lead * sum).clamp(0.0, 1.0)
}

// CDF integrand after r = ct sin u: C sin^{m-1}u cos^{2q+1}u on (0, asin(r/ct)).
struct CdfKernel {
    lead: f64,
    m1: f64,
    q2: f64,
}

impl CdfKernel {
    fn new(p: &FlightParams) -> Self {
        let mf = p.m as f64;
        let k = shape_k(p);
        let q = k - 0.5 * (mf + 1.0);
        let lead = ((2.0f64).ln() + ln_gamma_pos(k + 0.5) - ln_gamma_pos(q + 1.0) - ln_gamma_pos(0.5 * mf)).exp();
        CdfKernel { lead, m1: mf - 1.0, q2: 2.0 * q + 1.0 }
    }

    fn eval(&self, u: f64) -> f64 {
        let (s, c) = u.sin_cos();
        let sp = if self.m1 == 0.0 { 1.0 } else { s.powf(self.m1) };
        let cp = if self.q2 == 0.0 { 1.0 } else { c.max(0.0).powf(self.q2) };
        self.lead * sp * cp
    }

    fn integrate(&self, a: f64, b: f64) -> Result<f64> {
        Ok(integrate(|u| self.eval(u), a, b, Tolerance { abs: 1e-13, rel: 1e-13, max_subdivisions: 4000 })?.value)
    }
}

/// The quadrature branch, valid for every `q ≥ -1/2`.
pub fn cdf_quadrature(p: &FlightParams, r: f64) -> Result<f64> {
    require_projection(p)?;
    let ct = p.reach();
    if r <= 0.0 {
        return Ok(0.0);
    }
    if r >= ct {
        return Ok(1.0);
    }
    let kernel = CdfKernel::new(p);
    let u = (r / ct).asin();
    // integrate whichever side is shorter to keep the absolute error tight near 1
    let v = if u < 0.25 * PI {
        kernel.integrate(0.0, u)?
    } else {
        1.0 - kernel.integrate(u, 0.5 * PI)?
    };
    Ok(v.clamp(0.0, 1.0))
}

/// CDF at every radius of an ascending slice, sharing work between neighbours.
pub fn cdf_radial_sorted(p: &FlightParams, sorted: &[f64]) -> Result<Vec<f64>> {
    require_projection(p)?;
    if sorted.windows(2).any(|w| w[0] > w[1]) {
        return domain("radii must be sorted in ascending order");
    }
    if has_finite_sum_cdf(p) {
        return Ok(sorted.iter().map(|&r| cdf_finite_sum(p, r)).collect());
    }
    let ct = p.reach();
    let kernel = CdfKernel::new(p);
    let mut out = Vec::with_capacity(sorted.len());
    let mut acc = 0.0;
    let mut last_u = 0.0;
    for &r in sorted {
        if r <= 0.0 {
            out.push(0.0);
            continue;
        }
        if r >= ct {
            out.push(1.0);
            continue;
        }
        let u = (r / ct).asin();
        if u > last_u {
            acc += kernel.integrate(last_u, u)?;
            last_u = u;
        }
        out.push(acc.clamp(0.0, 1.0));
    }
    Ok(out)
}

/// `E R^p` for the projected radius, `p ≥ 1`.
pub fn radial_moment(p: &FlightParams, order: u32) -> Result<f64> {
    require_projection(p)?;
    if order < 1 {
        return domain("moment order must be >= 1");
    }
    let k = shape_k(p);
    let pf = order as f64;
    let mf = p.m as f64;
    let ln = ln_gamma_pos(k + 0.5) + ln_gamma_pos(0.5 * (pf + mf)) - ln_gamma_pos(k + 0.5 * (pf + 1.0)) - ln_gamma_pos(0.5 * mf)
        + pf * p.reach().ln();
    Ok(ln.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(d: usize, m: usize, n: usize, nu: f64) -> FlightParams {
        FlightParams::new(d, m, n, nu, 1.0, 1.0).unwrap()
    }

    #[test]
    fn folded_uniform() {
        let p = params(2, 1, 1, 0.0);
        assert!((density_projection(&p, &[0.0]).unwrap() - 0.5).abs() < 1e-15);
        assert!((radial_density_projection(&p, 0.3).unwrap() - 1.0).abs() < 1e-15);
        assert!((cdf_radial_projection(&p, 0.5).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cf_reduces_to_sinc() {
        let p = params(2, 1, 1, 0.0);
        for &a in &[0.0, 0.3, 2.0, 17.0] {
            let q = CfQuery::new(p, vec![a]).unwrap();
            let expect = if a == 0.0 { 1.0 } else { a.sin() / a };
            assert!((cf_projection(&q).unwrap() - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn second_moment_value() {
        let v = radial_moment(&params(3, 2, 1, 0.0), 2).unwrap();
        assert!((v - 0.4).abs() < 1e-14);
        assert!(radial_moment(&params(3, 2, 1, 0.0), 0).is_err());
    }

    #[test]
    fn support_and_domain() {
        let p = params(3, 2, 1, 1.0);
        assert_eq!(density_projection(&p, &[1.0, 0.0]).unwrap(), 0.0);
        assert_eq!(radial_density_projection(&p, 1.2).unwrap(), 0.0);
        assert!(density_projection(&params(3, 3, 1, 1.0), &[0.0; 3]).is_err());
        assert!(density_projection(&params(3, 2, 0, 1.0), &[0.0; 2]).is_err());
        assert_eq!(cdf_radial_projection(&p, 0.0).unwrap(), 0.0);
        assert_eq!(cdf_radial_projection(&p, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn cdf_branches_agree() {
        for &(d, m, n, nu) in &[(3, 1, 1, 0.0), (4, 2, 2, 1.0), (5, 1, 3, 0.5), (3, 1, 1, 1.0)] {
            let p = params(d, m, n, nu);
            assert!(has_finite_sum_cdf(&p), "{d} {m} {n} {nu}");
            for i in 1..20 {
                let r = i as f64 / 20.0;
                let a = cdf_finite_sum(&p, r);
                let b = cdf_quadrature(&p, r).unwrap();
                assert!((a - b).abs() < 1e-10, "{a} {b}");
            }
        }
    }

    #[test]
    fn sorted_cdf_matches_pointwise() {
        let p = params(3, 2, 1, 0.0);
        assert!(!has_finite_sum_cdf(&p));
        let radii: Vec<f64> = (0..=40).map(|i| i as f64 / 40.0).collect();
        let sorted = cdf_radial_sorted(&p, &radii).unwrap();
        for (r, s) in radii.iter().zip(sorted) {
            assert!((cdf_radial_projection(&p, *r).unwrap() - s).abs() < 1e-11);
        }
    }

    #[test]
    fn uniform_density_extends_to_full_space() {
        // d = 2, n = 2: uniform on the disk
        let p = FlightParams::new(2, 2, 2, 0.0, 1.0, 1.0).unwrap();
        assert!((density_uniform(&p, &[0.3, 0.1]).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!(density_uniform(&p.with_nu(1.0), &[0.0, 0.0]).is_err());
    }
}
