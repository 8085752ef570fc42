//! Cross-checks: Bessel integral identities by quadrature, and Monte Carlo samples against
//! the closed-form laws.

mod gof;
mod identities;
mod suite;

pub use gof::{
    gof_cf, gof_radial, gof_radial_against, ks_distance_sorted, CfPoint, CfReport, GofReport, CF_SE_LIMIT,
    DEFAULT_KS_THRESHOLD,
};
pub use identities::{
    check_identity, default_identity_grid, plane_lhs, plane_rhs, weber_lhs, IdentityId, IdentityParams,
    IdentityReport, DEFAULT_QUAD_TOL,
};
pub use suite::{
    default_cf_grid, default_radial_grid, run_suite, CfCase, CheckRecord, IdentityCase, RadialCase, SuiteConfig,
    SuiteReport, DEFAULT_CF_SAMPLES, DEFAULT_RADIAL_SAMPLES, DEFAULT_SEED, IDENTITY_THRESHOLD,
    TRUNCATED_IDENTITY_THRESHOLD,
};
