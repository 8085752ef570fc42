//! Closed-form laws: projected density, radial CDF and moments, characteristic functions,
//! the `ν = 1` density family and the fractional-Poisson mixture.

mod mixture;
mod nu1;
mod projection;

pub use mixture::{
    fractional_poisson_pmf, fractional_poisson_pmf_with, unconditional_density_projection, MixtureDensity,
    MixtureParams, PmfForm, DEFAULT_N_MAX,
};
pub use nu1::{cf_nu1, density_nu1, density_nu1_closed, radial_density_nu1};
pub use projection::{
    boundary_exponent, cdf_finite_sum, cdf_quadrature, cdf_radial_projection, cdf_radial_sorted, cf_projection,
    density_projection, density_uniform, has_finite_sum_cdf, radial_density_projection, radial_moment, shape_k,
    CfQuery, INTEGER_Q_TOL,
};
