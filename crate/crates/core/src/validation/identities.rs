//! Numerical checks of the Bessel integral identities: the plane integrals
//! `∫₀^{2π} e^{iz(α cos θ + β sin θ)} sin^{2n}θ dθ` and four classical finite and
//! semi-infinite Bessel integrals. Left sides by quadrature, right sides in closed form.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::quad::{integrate, integrate_breaks, wynn_epsilon, Tolerance};
use crate::specfun::{bessel_j_unchecked as jv, falling_factorial_coeffs, gamma_pos, MAX_COEFF_ORDER};

/// Default absolute quadrature tolerance for [`check_identity`].
pub const DEFAULT_QUAD_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    /// Plane integral with `sin⁰`: `2π J₀(zA)`, `A = √(α²+β²)`.
    Int0,
    /// Plane integral with `sin²`.
    IntNu1,
    /// Plane integral with `sin⁴`.
    IntNu2,
    /// Plane integral with `sin⁶`.
    IntNu3,
    /// Plane integral with `sin^{2n}` through the falling-factorial coefficients.
    IntGeneral,
    /// `∫₀^π sin(β cos x) sin^{ν+1}x J_ν(α sin x) dx = 0`, the odd counterpart used
    /// alongside the general plane integral.
    IntGeneralCompanion,
    /// `∫₀^a x^μ (a-x)^ν J_μ(x) J_ν(a-x) dx`.
    #[serde(rename = "gr_6581_3")]
    Gr6581_3,
    /// `∫₀^a J_μ(x)/x · J_ν(a-x)/(a-x) dx`.
    #[serde(rename = "gr_6533_2")]
    Gr6533_2,
    /// `∫₀^∞ x^{μ-ν} J_{ν+1}(ax) J_μ(bx) dx`.
    #[serde(rename = "gr_6575_1")]
    Gr6575_1,
    /// `∫₀^{π/2} sin^{ν+1}x cos(b cos x) J_ν(a sin x) dx`.
    #[serde(rename = "gr_6688_2")]
    Gr6688_2,
}

impl IdentityId {
    pub const ALL: [IdentityId; 10] = [
        IdentityId::Int0,
        IdentityId::IntNu1,
        IdentityId::IntNu2,
        IdentityId::IntNu3,
        IdentityId::IntGeneral,
        IdentityId::IntGeneralCompanion,
        IdentityId::Gr6581_3,
        IdentityId::Gr6533_2,
        IdentityId::Gr6575_1,
        IdentityId::Gr6688_2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::Int0 => "int0",
            IdentityId::IntNu1 => "int_nu1",
            IdentityId::IntNu2 => "int_nu2",
            IdentityId::IntNu3 => "int_nu3",
            IdentityId::IntGeneral => "int_general",
            IdentityId::IntGeneralCompanion => "int_general_companion",
            IdentityId::Gr6581_3 => "gr_6581_3",
            IdentityId::Gr6533_2 => "gr_6533_2",
            IdentityId::Gr6575_1 => "gr_6575_1",
            IdentityId::Gr6688_2 => "gr_6688_2",
        }
    }
}

/// Parameters of one identity instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IdentityParams {
    /// Plane integrals; `n` is the half sine power (fixed by the id except for `int_general`).
    Plane { z: f64, alpha: f64, beta: f64, n: usize },
    /// Companion integral.
    Companion { nu: f64, alpha: f64, beta: f64 },
    /// `gr_6581_3` and `gr_6533_2`.
    Convolution { mu: f64, nu: f64, a: f64 },
    /// `gr_6575_1`.
    Weber { mu: f64, nu: f64, a: f64, b: f64 },
    /// `gr_6688_2`.
    Sonine { nu: f64, a: f64, b: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: IdentityId,
    pub params: IdentityParams,
    /// Real part of the quadrature value.
    pub lhs: f64,
    /// Imaginary part of the quadrature value; zero for real integrands.
    pub lhs_imag: f64,
    pub rhs: f64,
    /// `|lhs + i·lhs_imag - rhs|`.
    pub abs_err: f64,
    /// Estimated truncation error of a semi-infinite integral, if any.
    pub tail_bound: Option<f64>,
}

fn tol(abs: f64) -> Tolerance {
    Tolerance { abs, rel: 0.0, max_subdivisions: 4000 }
}

// Breakpoints splitting [a, b] into pieces no longer than `width`.
fn breaks(a: f64, b: f64, width: f64) -> Vec<f64> {
    let pieces = ((b - a) / width).ceil().max(1.0) as usize;
    (0..=pieces).map(|i| a + (b - a) * i as f64 / pieces as f64).collect()
}

fn finite(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() {
        return domain(format!("{what} must be finite"));
    }
    Ok(())
}

fn expected_plane_order(id: IdentityId) -> Option<usize> {
    match id {
        IdentityId::Int0 => Some(0),
        IdentityId::IntNu1 => Some(1),
        IdentityId::IntNu2 => Some(2),
        IdentityId::IntNu3 => Some(3),
        _ => None,
    }
}

/// Plane integral by quadrature: returns (real, imaginary).
pub fn plane_lhs(z: f64, alpha: f64, beta: f64, n: usize, abs_tol: f64) -> Result<(f64, f64)> {
    let w = z * alpha.hypot(beta);
    let br = breaks(0.0, 2.0 * PI, (PI / w.max(1.0)).min(0.5 * PI));
    let power = 2 * n as i32;
    let re = integrate_breaks(
        |t: f64| (z * (alpha * t.cos() + beta * t.sin())).cos() * t.sin().powi(power),
        &br,
        tol(abs_tol),
    )?;
    let im = integrate_breaks(
        |t: f64| (z * (alpha * t.cos() + beta * t.sin())).sin() * t.sin().powi(power),
        &br,
        tol(abs_tol),
    )?;
    Ok((re.value, im.value))
}

/// Right side of the plane identity for `sin^{2n}`:
/// `2π Σ_j (-1)^j a_{j,n} β^{2j} J_{n+j}(zA) / (2^j z^{n-j} A^{n+j})`.
pub fn plane_rhs(z: f64, alpha: f64, beta: f64, n: usize) -> Result<f64> {
    let coeffs = falling_factorial_coeffs(n)?;
    let a = alpha.hypot(beta);
    let za = z * a;
    let mut s = 0.0;
    for j in 0..=n {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * coeffs.get(j) as f64 * beta.powi(2 * j as i32) * jv((n + j) as f64, za)
            / (2f64.powi(j as i32) * z.powi((n - j) as i32) * a.powi((n + j) as i32));
    }
    Ok(2.0 * PI * s)
}

// The hand-expanded right sides for n = 0..3, kept separate from the general sum.
fn plane_rhs_explicit(z: f64, alpha: f64, beta: f64, n: usize) -> f64 {
    let a = alpha.hypot(beta);
    let x = z * a;
    let b2 = beta * beta;
    let a2 = a * a;
    2.0 * PI
        * match n {
            0 => jv(0.0, x),
            1 => jv(1.0, x) / x - b2 / a2 * jv(2.0, x),
            2 => 3.0 / (x * x) * jv(2.0, x) - 6.0 * b2 / (z * a2 * a) * jv(3.0, x) + b2 * b2 / (a2 * a2) * jv(4.0, x),
            3 => {
                15.0 / (x * x * x) * jv(3.0, x) - 45.0 * b2 / (z * z * a2 * a2) * jv(4.0, x)
                    + 15.0 * b2 * b2 / (z * a2 * a2 * a) * jv(5.0, x)
                    - b2 * b2 * b2 / (a2 * a2 * a2) * jv(6.0, x)
            }
            _ => unreachable!("explicit forms cover n <= 3"),
        }
}

/// Left side of the semi-infinite identity: quadrature on `[0, T₀]`, then panels of one
/// half-period `π/a`, with Wynn's epsilon algorithm applied to the running partial sums.
/// Returns the accelerated value and the spread of the last two accelerated estimates.
pub fn weber_lhs(mu: f64, nu: f64, a: f64, b: f64, panels: usize, abs_tol: f64) -> Result<(f64, f64)> {
    let f = |x: f64| {
        if x == 0.0 {
            0.0
        } else {
            x.powf(mu - nu) * jv(nu + 1.0, a * x) * jv(mu, b * x)
        }
    };
    let h = PI / a;
    let t0 = 20.0 * h;
    let head = integrate_breaks(f, &breaks(0.0, t0, 0.5 * h), tol(abs_tol))?.value;
    let mut sums = Vec::with_capacity(panels + 1);
    let mut acc = head;
    sums.push(acc);
    for k in 0..panels {
        let lo = t0 + k as f64 * h;
        acc += integrate(f, lo, lo + h, tol(abs_tol))?.value;
        sums.push(acc);
    }
    let (value, spread) = wynn_epsilon(&sums);
    Ok((value, spread + 10.0 * abs_tol))
}

/// Evaluate one identity.
pub fn check_identity(id: IdentityId, params: IdentityParams, quadrature_tolerance: f64) -> Result<IdentityReport> {
    if !(quadrature_tolerance > 0.0) {
        return domain("quadrature tolerance must be positive");
    }
    let t = quadrature_tolerance;
    let mut tail_bound = None;
    let (lhs, lhs_imag, rhs) = match (id, params) {
        (
            IdentityId::Int0 | IdentityId::IntNu1 | IdentityId::IntNu2 | IdentityId::IntNu3 | IdentityId::IntGeneral,
            IdentityParams::Plane { z, alpha, beta, n },
        ) => {
            finite(z, "z")?;
            finite(alpha, "alpha")?;
            finite(beta, "beta")?;
            if !(z > 0.0) {
                return domain(format!("z must be positive, got {z}"));
            }
            if alpha == 0.0 && beta == 0.0 {
                return domain("alpha and beta must not both vanish");
            }
            if let Some(expected) = expected_plane_order(id) {
                if n != expected {
                    return domain(format!("{} fixes n = {expected}, got {n}", id.as_str()));
                }
            }
            if n > MAX_COEFF_ORDER {
                return domain(format!("n = {n} exceeds {MAX_COEFF_ORDER}"));
            }
            let (re, im) = plane_lhs(z, alpha, beta, n, t)?;
            let rhs = if id == IdentityId::IntGeneral {
                plane_rhs(z, alpha, beta, n)?
            } else {
                plane_rhs_explicit(z, alpha, beta, n)
            };
            (re, im, rhs)
        }
        (IdentityId::IntGeneralCompanion, IdentityParams::Companion { nu, alpha, beta }) => {
            if !(nu >= -0.5) || !nu.is_finite() {
                return domain(format!("order must be >= -1/2, got {nu}"));
            }
            if !(alpha >= 0.0) || !alpha.is_finite() {
                return domain(format!("alpha must be finite and >= 0, got {alpha}"));
            }
            finite(beta, "beta")?;
            let w = alpha.abs().max(beta.abs()).max(1.0);
            let lhs = integrate_breaks(
                |x: f64| (beta * x.cos()).sin() * x.sin().powf(nu + 1.0) * jv(nu, alpha * x.sin()),
                &breaks(0.0, PI, PI / w),
                tol(t),
            )?;
            (lhs.value, 0.0, 0.0)
        }
        (IdentityId::Gr6581_3, IdentityParams::Convolution { mu, nu, a }) => {
            if !(mu > -0.5 && nu > -0.5) || !mu.is_finite() || !nu.is_finite() {
                return domain(format!("orders must exceed -1/2, got mu={mu}, nu={nu}"));
            }
            if !(a > 0.0) || !a.is_finite() {
                return domain(format!("a must be positive, got {a}"));
            }
            let lhs = integrate_breaks(
                |x: f64| x.powf(mu) * (a - x).powf(nu) * jv(mu, x) * jv(nu, a - x),
                &breaks(0.0, a, 0.5 * PI),
                tol(t),
            )?;
            let rhs = gamma_pos(mu + 0.5) * gamma_pos(nu + 0.5) / ((2.0 * PI).sqrt() * gamma_pos(mu + nu + 1.0))
                * a.powf(mu + nu + 0.5)
                * jv(mu + nu + 0.5, a);
            (lhs.value, 0.0, rhs)
        }
        (IdentityId::Gr6533_2, IdentityParams::Convolution { mu, nu, a }) => {
            if !(mu > 0.0 && nu > 0.0) || !mu.is_finite() || !nu.is_finite() {
                return domain(format!("orders must be positive, got mu={mu}, nu={nu}"));
            }
            if !(a > 0.0) || !a.is_finite() {
                return domain(format!("a must be positive, got {a}"));
            }
            let lhs = integrate_breaks(
                |x: f64| jv(mu, x) / x * jv(nu, a - x) / (a - x),
                &breaks(0.0, a, 0.5 * PI),
                tol(t),
            )?;
            let rhs = (1.0 / mu + 1.0 / nu) * jv(mu + nu, a) / a;
            (lhs.value, 0.0, rhs)
        }
        (IdentityId::Gr6575_1, IdentityParams::Weber { mu, nu, a, b }) => {
            if !(nu + 1.0 > mu && mu > 0.0) || !nu.is_finite() {
                return domain(format!("need nu + 1 > mu > 0, got mu={mu}, nu={nu}"));
            }
            if !(a > 0.0 && b >= 0.0 && a >= b) || !a.is_finite() {
                return domain(format!("need a >= b >= 0 and a > 0, got a={a}, b={b}"));
            }
            if a == b && !(nu > mu) {
                return domain("a = b needs nu > mu for the integral to converge");
            }
            let (value, tail) = weber_lhs(mu, nu, a, b, 40, t)?;
            tail_bound = Some(tail);
            let rhs = (a * a - b * b).powf(nu - mu) * b.powf(mu)
                / (2f64.powf(nu - mu) * a.powf(nu + 1.0) * gamma_pos(nu - mu + 1.0));
            (value, 0.0, rhs)
        }
        (IdentityId::Gr6688_2, IdentityParams::Sonine { nu, a, b }) => {
            if !(nu >= -0.5) || !nu.is_finite() {
                return domain(format!("order must be >= -1/2, got {nu}"));
            }
            if !(a > 0.0) || !a.is_finite() {
                return domain(format!("a must be positive, got {a}"));
            }
            finite(b, "b")?;
            let w = a.max(b.abs()).max(1.0);
            let lhs = integrate_breaks(
                |x: f64| x.sin().powf(nu + 1.0) * (b * x.cos()).cos() * jv(nu, a * x.sin()),
                &breaks(0.0, 0.5 * PI, PI / w),
                tol(t),
            )?;
            let s = (a * a + b * b).sqrt();
            let rhs = (0.5 * PI).sqrt() * a.powf(nu) * jv(nu + 0.5, s) / s.powf(nu + 0.5);
            (lhs.value, 0.0, rhs)
        }
        (id, params) => {
            return domain(format!("parameters {params:?} do not fit identity {}", id.as_str()));
        }
    };
    Ok(IdentityReport {
        identity_id: id,
        params,
        lhs,
        lhs_imag,
        rhs,
        abs_err: (lhs - rhs).hypot(lhs_imag),
        tail_bound,
    })
}

/// Three or more points inside the validity region of every identity.
pub fn default_identity_grid() -> Vec<(IdentityId, IdentityParams)> {
    use IdentityId::*;
    let mut grid = Vec::new();
    let plane = |z, alpha, beta, n| IdentityParams::Plane { z, alpha, beta, n };
    for (id, n) in [(Int0, 0), (IntNu1, 1), (IntNu2, 2), (IntNu3, 3)] {
        for &(z, a, b) in &[(1.0, 1.0, 0.0), (2.5, 0.3, -1.2), (7.0, 1.1, 0.8)] {
            grid.push((id, plane(z, a, b, n)));
        }
    }
    for n in 0..=4 {
        for &(z, a, b) in &[(2.0, 0.7, 1.1), (5.0, 1.0, -0.5), (0.5, 0.3, 2.0)] {
            grid.push((IntGeneral, plane(z, a, b, n)));
        }
    }
    for &(nu, alpha, beta) in &[(0.0, 1.0, 2.0), (1.0, 2.5, 0.7), (2.5, 0.9, 3.0)] {
        grid.push((IntGeneralCompanion, IdentityParams::Companion { nu, alpha, beta }));
    }
    for &(mu, nu, a) in &[(0.5, 0.5, 3.0), (1.0, 2.0, 5.0), (0.2, 1.5, 2.0)] {
        grid.push((Gr6581_3, IdentityParams::Convolution { mu, nu, a }));
    }
    for &(mu, nu, a) in &[(1.0, 1.0, 3.0), (2.0, 1.5, 5.0), (0.5, 2.0, 2.0)] {
        grid.push((Gr6533_2, IdentityParams::Convolution { mu, nu, a }));
    }
    for &(mu, nu, a, b) in &[(1.0, 2.0, 2.0, 1.0), (0.5, 1.5, 3.0, 1.0), (1.0, 3.0, 1.0, 0.5)] {
        grid.push((Gr6575_1, IdentityParams::Weber { mu, nu, a, b }));
    }
    for &(nu, a, b) in &[(1.0, 2.0, 0.0), (0.5, 1.0, 2.0), (2.0, 3.0, 1.5)] {
        grid.push((Gr6688_2, IdentityParams::Sonine { nu, a, b }));
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu1_plane_value() {
        let r = check_identity(
            IdentityId::IntNu1,
            IdentityParams::Plane { z: 1.0, alpha: 1.0, beta: 0.0, n: 1 },
            DEFAULT_QUAD_TOL,
        )
        .unwrap();
        assert!((r.rhs - 2.0 * PI * jv(1.0, 1.0)).abs() < 1e-14);
        assert!(r.abs_err < 1e-8);
    }

    #[test]
    fn general_matches_explicit_sums() {
        for n in 0..=3 {
            for &(z, a, b) in &[(1.3, 0.4, 0.9), (6.0, -1.0, 0.2)] {
                let g = plane_rhs(z, a, b, n).unwrap();
                let e = plane_rhs_explicit(z, a, b, n);
                assert!((g - e).abs() < 1e-13, "{n}: {g} {e}");
            }
        }
    }

    #[test]
    fn validity_conditions() {
        let e = |id, p| check_identity(id, p, DEFAULT_QUAD_TOL).is_err();
        assert!(e(IdentityId::Gr6581_3, IdentityParams::Convolution { mu: -0.6, nu: 1.0, a: 1.0 }));
        assert!(e(IdentityId::Gr6533_2, IdentityParams::Convolution { mu: 0.0, nu: 1.0, a: 1.0 }));
        assert!(e(IdentityId::Gr6575_1, IdentityParams::Weber { mu: 1.0, nu: 2.0, a: 1.0, b: 2.0 }));
        assert!(e(IdentityId::Gr6575_1, IdentityParams::Weber { mu: 3.5, nu: 2.0, a: 2.0, b: 1.0 }));
        assert!(e(IdentityId::Gr6688_2, IdentityParams::Sonine { nu: -0.7, a: 1.0, b: 1.0 }));
        assert!(e(IdentityId::IntNu2, IdentityParams::Plane { z: 1.0, alpha: 1.0, beta: 1.0, n: 1 }));
        assert!(e(IdentityId::Int0, IdentityParams::Sonine { nu: 1.0, a: 1.0, b: 1.0 }));
    }

    #[test]
    fn identity_names_round_trip() {
        for id in IdentityId::ALL {
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
    }
}
