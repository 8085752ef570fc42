//! The full flight at `ν = 1`, which is not isotropic: the law depends on `‖x‖` and on
//! the last coordinate `x_d` separately.
//!
//! Notation: `N = (n+1)(d+1)`, `M = (n+1)(d+3)/2`, `e = n(d+1)/2`.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::flight::{radial, FlightParams};
use crate::specfun::{binomial, falling_factorial_coeffs, ln_gamma_pos, normalized_bessel_unchecked, MAX_COEFF_ORDER};

fn require_nu1(p: &FlightParams) -> Result<()> {
    p.validate()?;
    if p.nu != 1.0 {
        return domain(format!("this closed form holds only for nu = 1, got {}", p.nu));
    }
    if p.n < 1 {
        return domain("closed forms need at least one change of direction (n >= 1)");
    }
    if p.m != p.d {
        return domain(format!("the nu = 1 law is for the full space, m must equal d={}", p.d));
    }
    Ok(())
}

fn check_vector(v: &[f64], d: usize, what: &str) -> Result<()> {
    if v.len() != d {
        return domain(format!("{what} has {} coordinates, expected d = {d}", v.len()));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return domain(format!("{what} coordinates must be finite"));
    }
    Ok(())
}

/// Characteristic function of the `ν = 1` flight at frequency `alpha` (length `d`).
///
/// Evaluated as `Σ_i C(n+1,i) (-(d+1)(ct α_d)²)^i Γ(N)/Γ(N+2i) Λ_{(N-1)/2+i}(ct‖α‖)`,
/// which is algebraically the `j`-indexed Bessel sum with `i = n+1-j`, rewritten through
/// normalized Bessel functions so that `α → 0` needs no special case.
pub fn cf_nu1(p: &FlightParams, alpha: &[f64]) -> Result<f64> {
    require_nu1(p)?;
    check_vector(alpha, p.d, "frequency vector")?;
    let ct = p.reach();
    let z = ct * radial(alpha);
    let nn = ((p.n + 1) * (p.d + 1)) as f64;
    let ad = ct * alpha[p.d - 1];
    let x = -(p.d as f64 + 1.0) * ad * ad;
    let mut sum = 0.0;
    let mut pow = 1.0;
    for i in 0..=p.n + 1 {
        if i > 0 {
            pow *= x;
            if pow == 0.0 {
                break;
            }
        }
        let ratio = (ln_gamma_pos(nn) - ln_gamma_pos(nn + 2.0 * i as f64)).exp();
        sum += binomial(p.n + 1, i) * pow * ratio * normalized_bessel_unchecked(0.5 * (nn - 1.0) + i as f64, z);
    }
    Ok(sum)
}

/// Density of the `ν = 1` flight in `ℝ^d`, via the general double sum over `j` and `k`
/// with the falling-factorial coefficients `a_{k,n+1-j}`. Zero outside the open ball.
pub fn density_nu1(p: &FlightParams, x: &[f64]) -> Result<f64> {
    require_nu1(p)?;
    check_vector(x, p.d, "point")?;
    if p.n + 1 > MAX_COEFF_ORDER {
        return domain(format!("n = {} exceeds the supported order {}", p.n, MAX_COEFF_ORDER - 1));
    }
    let ct = p.reach();
    let r = radial(x);
    if !(r < ct) {
        return Ok(0.0);
    }
    let (n, d) = (p.n as f64, p.d as f64);
    let nn = (n + 1.0) * (d + 1.0);
    let big_m = 0.5 * (n + 1.0) * (d + 3.0);
    let e = 0.5 * n * (d + 1.0);
    let xi2 = (x[p.d - 1] / ct).powi(2);
    let rho = r / ct;
    let w = (1.0 - rho) * (1.0 + rho);
    let ln_lead = ln_gamma_pos(nn) + (1.0 - nn) * (2.0f64).ln() - 0.5 * (d - 1.0) * PI.ln();
    let half = 0.5 * (d + 1.0);
    let mut total = 0.0;
    for j in 0..=p.n + 1 {
        let i = p.n + 1 - j;
        let coeffs = falling_factorial_coeffs(i)?;
        let outer_sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let outer = outer_sign * binomial(p.n + 1, j) * half.powi(i as i32);
        let ln_outer = ln_lead - ln_gamma_pos(big_m - j as f64);
        let mut inner = 0.0;
        for k in 0..=i {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let ex = e - k as f64;
            let ln_term = ln_outer - ln_gamma_pos(ex + 1.0);
            inner += sign * coeffs.get(k) as f64 * xi2.powi(k as i32) * w.powf(ex) * ln_term.exp();
        }
        total += outer * inner;
    }
    Ok(total / ct.powi(p.d as i32))
}

fn require_closed(p: &FlightParams) -> Result<()> {
    require_nu1(p)?;
    if p.n != 1 && p.n != 2 {
        return domain(format!("explicit forms exist only for n = 1 and n = 2, got n = {}", p.n));
    }
    Ok(())
}

/// The explicit `ν = 1` densities for `n = 1` (three terms) and `n = 2` (four terms).
pub fn density_nu1_closed(p: &FlightParams, x: &[f64]) -> Result<f64> {
    require_closed(p)?;
    check_vector(x, p.d, "point")?;
    let ct = p.reach();
    let r2: f64 = x.iter().map(|v| v * v).sum();
    if !(r2 < ct * ct) {
        return Ok(0.0);
    }
    let d = p.d as f64;
    let u = ct * ct - r2;
    let xd2 = x[p.d - 1] * x[p.d - 1];
    let g = |v: f64| ln_gamma_pos(v);
    Ok(if p.n == 1 {
        let ln_pre = g(2.0 * (d + 1.0))
            - 0.5 * (d - 1.0) * PI.ln()
            - (2.0 * d + 1.0) * (2.0 * ct).ln()
            - (d + 2.0).ln()
            - g(d + 1.0)
            - g(0.5 * (d - 1.0));
        let body = 3.0 / (d - 1.0) * u.powf(0.5 * (d + 1.0)) - 2.0 * xd2 * u.powf(0.5 * (d - 1.0))
            + (d + 1.0) * xd2 * xd2 * u.powf(0.5 * (d - 3.0));
        ln_pre.exp() * body
    } else {
        let ln_pre = g(3.0 * d + 3.0) + (d + 1.0).ln()
            - 0.5 * (d - 1.0) * PI.ln()
            - (3.0 * d + 2.0) * (2.0 * ct).ln()
            - g(d - 1.0)
            - g(1.5 * (d + 3.0) - 3.0)
            - (3.0 * d + 7.0).ln()
            - (3.0 * d + 5.0).ln();
        let den = (d + 1.0) * d * (d - 1.0);
        let body = 4.0 * (d + 4.0) / den * u.powf(d + 1.0)
            + 2.0 * xd2 * (6.0 * d * d + 6.0 * d + 8.0) / den * u.powf(d)
            - 8.0 * xd2 * xd2 * u.powf(d - 1.0)
            + 8.0 / 3.0 * (d + 1.0) * xd2 * xd2 * xd2 * u.powf(d - 2.0);
        ln_pre.exp() * body
    })
}

/// Density of `‖X_d(t)‖` at `ν = 1` for `n ∈ {1, 2}` on `(0, ct)`; zero elsewhere.
pub fn radial_density_nu1(p: &FlightParams, r: f64) -> Result<f64> {
    require_closed(p)?;
    let ct = p.reach();
    if !(r > 0.0 && r < ct) {
        return Ok(0.0);
    }
    let d = p.d as f64;
    let u = ct * ct - r * r;
    let g = |v: f64| ln_gamma_pos(v);
    let ln_two_sqrt_pi = (2.0 * PI.sqrt()).ln();
    Ok(if p.n == 1 {
        let ln_pre = g(2.0 * (d + 1.0)) + ln_two_sqrt_pi
            - (2.0 * d + 1.0) * (2.0 * ct).ln()
            - (d + 2.0).ln()
            - g(d + 1.0)
            - g(0.5 * (d - 1.0))
            - g(0.5 * d);
        let body = 3.0 / (d - 1.0) * r.powf(d - 1.0) * u.powf(0.5 * (d + 1.0))
            - 2.0 / d * r.powf(d + 1.0) * u.powf(0.5 * (d - 1.0))
            + 3.0 * (d + 1.0) / (d * (d + 2.0)) * r.powf(d + 3.0) * u.powf(0.5 * (d - 3.0));
        ln_pre.exp() * body
    } else {
        let ln_pre = g(3.0 * d + 3.0) + (d + 1.0).ln() + ln_two_sqrt_pi
            - (3.0 * d + 2.0) * (2.0 * ct).ln()
            - g(d - 1.0)
            - g(1.5 * (d + 3.0) - 3.0)
            - g(0.5 * d)
            - (3.0 * d + 7.0).ln()
            - (3.0 * d + 5.0).ln();
        let body = 4.0 * (d + 4.0) / ((d + 1.0) * d * (d - 1.0)) * r.powf(d - 1.0) * u.powf(d + 1.0)
            + 2.0 * (6.0 * d * d + 6.0 * d + 8.0) / ((d + 1.0) * d * d * (d - 1.0)) * r.powf(d + 1.0) * u.powf(d)
            - 24.0 / (d * (d + 2.0)) * r.powf(d + 3.0) * u.powf(d - 1.0)
            + 40.0 * (d + 1.0) / (d * (d + 2.0) * (d + 4.0)) * r.powf(d + 5.0) * u.powf(d - 2.0);
        ln_pre.exp() * body
    })
}
