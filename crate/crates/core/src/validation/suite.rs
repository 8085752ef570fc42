//! The validation suite: identity checks and Monte Carlo checks run as independent entries,
//! aggregated into a JSON-serializable report.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::flight::FlightParams;
use crate::validation::gof::{gof_cf, gof_radial_against, DEFAULT_KS_THRESHOLD};
use crate::validation::identities::{check_identity, default_identity_grid, IdentityId, IdentityParams, DEFAULT_QUAD_TOL};

/// Pass threshold on `abs_err` for finite-interval identities.
pub const IDENTITY_THRESHOLD: f64 = 1e-7;
/// Pass threshold on `abs_err` for the truncated semi-infinite identity.
pub const TRUNCATED_IDENTITY_THRESHOLD: f64 = 1e-5;
/// Flights per radial check in the default grid.
pub const DEFAULT_RADIAL_SAMPLES: usize = 100_000;
/// Flights per CF check in the default grid.
pub const DEFAULT_CF_SAMPLES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub params: IdentityParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialCase {
    /// Simulated parameters.
    pub params: FlightParams,
    /// Drift exponent of the tested CDF when it differs from the simulated one.
    pub model_nu: Option<f64>,
    pub sample_count: usize,
    pub threshold: f64,
    /// Expected to fail; excluded from the suite verdict.
    pub negative_control: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CfCase {
    pub params: FlightParams,
    pub alphas: Vec<Vec<f64>>,
    pub sample_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub master_seed: u64,
    pub quadrature_tolerance: f64,
    pub identities: Vec<IdentityCase>,
    pub radial: Vec<RadialCase>,
    pub cf: Vec<CfCase>,
}

impl SuiteConfig {
    /// No checks at all.
    pub fn empty(master_seed: u64) -> Self {
        SuiteConfig {
            master_seed,
            quadrature_tolerance: DEFAULT_QUAD_TOL,
            identities: Vec::new(),
            radial: Vec::new(),
            cf: Vec::new(),
        }
    }

    /// Every identity point, the radial grid with one negative control, and two CF checks.
    pub fn full(master_seed: u64) -> Self {
        let mut cfg = SuiteConfig::empty(master_seed);
        cfg.identities = default_identity_grid()
            .into_iter()
            .map(|(id, params)| IdentityCase { id, params })
            .collect();
        cfg.radial = default_radial_grid(DEFAULT_RADIAL_SAMPLES);
        cfg.cf = default_cf_grid(DEFAULT_CF_SAMPLES);
        cfg
    }
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig::full(DEFAULT_SEED)
    }
}

pub const DEFAULT_SEED: u64 = 20_261_016;

/// `(d, m, n, ν) ∈ {2,3,4} × {1,2} × {1,2,3} × {0,1}` with `m < d`, then one control that
/// simulates `ν = 1` and tests against `ν = 0`.
pub fn default_radial_grid(sample_count: usize) -> Vec<RadialCase> {
    let mut out = Vec::new();
    for d in 2..=4 {
        for m in 1..=2usize.min(d - 1) {
            for n in 1..=3 {
                for nu in [0.0, 1.0] {
                    out.push(RadialCase {
                        params: FlightParams { d, m, n, nu, c: 1.0, t: 1.0 },
                        model_nu: None,
                        sample_count,
                        threshold: DEFAULT_KS_THRESHOLD,
                        negative_control: false,
                    });
                }
            }
        }
    }
    out.push(RadialCase {
        params: FlightParams { d: 3, m: 2, n: 2, nu: 1.0, c: 1.0, t: 1.0 },
        model_nu: Some(0.0),
        sample_count,
        threshold: DEFAULT_KS_THRESHOLD,
        negative_control: true,
    });
    out
}

/// Nine frequency vectors per configuration, at `(d, n) = (2, 1)` and `(3, 2)` with `ν = 1`.
pub fn default_cf_grid(sample_count: usize) -> Vec<CfCase> {
    let planar = vec![
        vec![0.5, 0.0],
        vec![0.0, 0.5],
        vec![1.0, 1.0],
        vec![2.0, 0.0],
        vec![0.0, 2.0],
        vec![1.5, -1.0],
        vec![3.0, 0.5],
        vec![-0.7, 2.5],
        vec![4.0, 4.0],
    ];
    let spatial = vec![
        vec![0.5, 0.0, 0.0],
        vec![0.0, 0.0, 0.5],
        vec![1.0, 1.0, 1.0],
        vec![2.0, 0.0, 0.0],
        vec![0.0, 0.0, 2.0],
        vec![1.5, -1.0, 0.5],
        vec![0.0, 3.0, 0.5],
        vec![-0.7, 0.3, 2.5],
        vec![3.0, 2.0, 2.0],
    ];
    vec![
        CfCase { params: FlightParams { d: 2, m: 2, n: 1, nu: 1.0, c: 1.0, t: 1.0 }, alphas: planar, sample_count },
        CfCase { params: FlightParams { d: 3, m: 3, n: 2, nu: 1.0, c: 1.0, t: 1.0 }, alphas: spatial, sample_count },
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub params: Value,
    pub metric: f64,
    pub threshold: f64,
    pub passed: bool,
    pub negative_control: bool,
    /// Full sub-report, or the error message when the check could not run.
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub master_seed: u64,
    pub checks: Vec<CheckRecord>,
    /// All checks that are not negative controls passed.
    pub success: bool,
    /// Every negative control failed, as it should.
    pub controls_rejected: bool,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed && !c.negative_control)
    }
}

// splitmix64, to give each suite entry its own seed
fn entry_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index + 1));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn tag(p: &FlightParams) -> String {
    format!("d{}_m{}_n{}_nu{}", p.d, p.m, p.n, p.nu)
}

enum Entry<'a> {
    Identity(usize, &'a IdentityCase),
    Radial(usize, &'a RadialCase),
    Cf(usize, &'a CfCase),
}

fn failed(check_id: String, params: Value, threshold: f64, negative_control: bool, msg: String) -> CheckRecord {
    CheckRecord {
        check_id,
        params,
        metric: f64::NAN,
        threshold,
        passed: false,
        negative_control,
        detail: json!({ "error": msg }),
    }
}

fn run_entry(cfg: &SuiteConfig, entry: &Entry) -> CheckRecord {
    match *entry {
        Entry::Identity(i, case) => {
            let check_id = format!("identity/{}/{i}", case.id.as_str());
            let threshold = if case.id == IdentityId::Gr6575_1 { TRUNCATED_IDENTITY_THRESHOLD } else { IDENTITY_THRESHOLD };
            let params = json!(case.params);
            match check_identity(case.id, case.params, cfg.quadrature_tolerance) {
                Ok(r) => CheckRecord {
                    check_id,
                    params,
                    metric: r.abs_err,
                    threshold,
                    passed: r.abs_err < threshold,
                    negative_control: false,
                    detail: json!(r),
                },
                Err(e) => failed(check_id, params, threshold, false, e.to_string()),
            }
        }
        Entry::Radial(i, case) => {
            let prefix = if case.negative_control { "gof_radial_control" } else { "gof_radial" };
            let check_id = format!("{prefix}/{}/{i}", tag(&case.params));
            let model = case.params.with_nu(case.model_nu.unwrap_or(case.params.nu));
            let params = json!({ "simulated": case.params, "model": model, "sample_count": case.sample_count });
            let seed = entry_seed(cfg.master_seed, 1_000 + i as u64);
            match gof_radial_against(&case.params, &model, case.sample_count, seed, case.threshold) {
                Ok(r) => CheckRecord {
                    check_id,
                    params,
                    metric: r.ks_distance,
                    threshold: r.threshold,
                    passed: r.passed,
                    negative_control: case.negative_control,
                    detail: json!(r),
                },
                Err(e) => failed(check_id, params, case.threshold, case.negative_control, e.to_string()),
            }
        }
        Entry::Cf(i, case) => {
            let check_id = format!("gof_cf/{}/{i}", tag(&case.params));
            let params = json!({ "params": case.params, "alphas": case.alphas, "sample_count": case.sample_count });
            let seed = entry_seed(cfg.master_seed, 2_000 + i as u64);
            match gof_cf(&case.params, &case.alphas, case.sample_count, seed) {
                Ok(r) => CheckRecord {
                    check_id,
                    params,
                    metric: r.max_deviation,
                    threshold: r.threshold,
                    passed: r.passed,
                    negative_control: false,
                    detail: json!(r),
                },
                Err(e) => failed(check_id, params, super::gof::CF_SE_LIMIT, false, e.to_string()),
            }
        }
    }
}

/// Run every entry of `cfg`. Entries run concurrently; a failing entry is recorded and the
/// rest continue. The report lists entries in configuration order.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut entries: Vec<Entry> = Vec::new();
    entries.extend(cfg.identities.iter().enumerate().map(|(i, c)| Entry::Identity(i, c)));
    entries.extend(cfg.radial.iter().enumerate().map(|(i, c)| Entry::Radial(i, c)));
    entries.extend(cfg.cf.iter().enumerate().map(|(i, c)| Entry::Cf(i, c)));
    let checks: Vec<CheckRecord> = entries.par_iter().map(|e| run_entry(cfg, e)).collect();
    let success = checks.iter().all(|c| c.passed || c.negative_control);
    let controls_rejected = checks.iter().filter(|c| c.negative_control).all(|c| !c.passed);
    SuiteReport { master_seed: cfg.master_seed, checks, success, controls_rejected }
}
