//! Random flights in `ℝ^d` whose directions follow a sin-power law with drift exponent `ν`
//! and whose intertimes are rescaled Dirichlet: seeded parallel simulation, closed-form
//! densities and characteristic functions, and a validation harness tying the two together.

pub mod analytic;
pub mod angular;
pub mod error;
pub mod flight;
pub mod quad;
pub mod specfun;
pub mod temporal;
pub mod validation;

pub use analytic::{CfQuery, MixtureDensity, MixtureParams, PmfForm};
pub use angular::{AngleVector, Direction};
pub use error::{Error, Result};
pub use flight::{FlightParams, Trajectory};
pub use temporal::IntertimeVector;
pub use validation::{CfReport, GofReport, IdentityId, IdentityParams, IdentityReport, SuiteConfig, SuiteReport};
