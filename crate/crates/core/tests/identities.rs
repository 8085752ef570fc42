use std::f64::consts::PI;

use driftflight::specfun::bessel_j;
use driftflight::validation::{
    check_identity, default_identity_grid, plane_rhs, weber_lhs, IdentityId, IdentityParams, DEFAULT_QUAD_TOL,
};

#[test]
fn default_grid_within_thresholds() {
    for (id, params) in default_identity_grid() {
        let r = check_identity(id, params, DEFAULT_QUAD_TOL).unwrap();
        let limit = if id == IdentityId::Gr6575_1 { 1e-5 } else { 1e-7 };
        println!("{:>22} {:?} lhs={:.15e} rhs={:.15e} err={:.2e}", id.as_str(), params, r.lhs, r.rhs, r.abs_err);
        assert!(r.abs_err < limit, "{id:?} {params:?}: {}", r.abs_err);
        assert!(r.lhs_imag.abs() < 1e-9);
    }
}

#[test]
fn every_identity_has_three_points() {
    let grid = default_identity_grid();
    for id in IdentityId::ALL {
        assert!(grid.iter().filter(|(g, _)| *g == id).count() >= 3, "{id:?}");
    }
    for n in 0..=4 {
        assert!(grid.iter().any(|(g, p)| *g == IdentityId::IntGeneral
            && matches!(p, IdentityParams::Plane { n: k, .. } if *k == n)));
    }
}

#[test]
fn int_nu1_example_value() {
    let r = check_identity(IdentityId::IntNu1, IdentityParams::Plane { z: 1.0, alpha: 1.0, beta: 0.0, n: 1 }, 1e-12)
        .unwrap();
    // 2π J₁(1); both constants from mpmath
    assert!((r.rhs - 2.0 * PI * 0.440_050_585_744_933_5).abs() < 1e-12);
    assert!((r.lhs - 2.764_919_374_768_34).abs() < 1e-8);
}

#[test]
fn sonine_at_zero_b_reduces_to_poisson_integral() {
    // b = 0: √(π/2) a^ν J_{ν+1/2}(a) / a^{ν+1/2}
    let r = check_identity(IdentityId::Gr6688_2, IdentityParams::Sonine { nu: 1.0, a: 2.0, b: 0.0 }, 1e-12).unwrap();
    let want = (PI / 2.0).sqrt() * 2.0 * bessel_j(1.5, 2.0).unwrap() / 2f64.powf(1.5);
    assert!((r.rhs - want).abs() < 1e-15);
    assert!(r.abs_err < 1e-8);
}

#[test]
fn general_reproduces_the_three_term_sum() {
    let (z, a, b) = (2.2, 0.6, -1.3);
    let general = plane_rhs(z, a, b, 2).unwrap();
    let s = a.hypot(b);
    let x = z * s;
    let j = |k: f64| bessel_j(k, x).unwrap();
    let three = 2.0 * PI * (3.0 / (x * x) * j(2.0) - 6.0 * b * b / (z * s.powi(3)) * j(3.0) + b.powi(4) / s.powi(4) * j(4.0));
    assert!((general - three).abs() < 1e-14);
}

#[test]
fn doubling_truncation_stays_inside_tail_bound() {
    for &(mu, nu, a, b) in &[(1.0, 2.0, 2.0, 1.0), (0.5, 1.5, 3.0, 1.0), (1.0, 3.0, 1.0, 0.5)] {
        let (v1, tail) = weber_lhs(mu, nu, a, b, 40, DEFAULT_QUAD_TOL).unwrap();
        // truncation radius is 20h + 40h = 60h; doubling it means 100 panels
        let (v2, _) = weber_lhs(mu, nu, a, b, 100, DEFAULT_QUAD_TOL).unwrap();
        assert!((v1 - v2).abs() < tail, "{mu} {nu} {a} {b}: {} vs {tail}", (v1 - v2).abs());
    }
}

#[test]
fn companion_vanishes() {
    for &(nu, alpha, beta) in &[(0.0, 3.0, 5.0), (0.5, 7.0, 1.0), (3.0, 1.0, 9.0)] {
        let r = check_identity(IdentityId::IntGeneralCompanion, IdentityParams::Companion { nu, alpha, beta }, 1e-12)
            .unwrap();
        assert!(r.abs_err < 1e-9, "{}", r.abs_err);
    }
}
