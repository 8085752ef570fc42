//! The seven subcommands. Each resolves its configuration, computes, and writes one CSV or
//! JSON document whose first line (CSV) or `config` field (JSON) echoes the resolved run.

use std::io::Write;
use std::path::{Path, PathBuf};

use driftflight::analytic::{
    cdf_radial_sorted, cf_nu1, cf_projection, density_nu1, density_nu1_closed, density_projection,
    radial_density_nu1, radial_density_projection, radial_moment, unconditional_density_projection, CfQuery,
    MixtureParams, DEFAULT_N_MAX,
};
use driftflight::flight::{simulate_batch, simulate_projected_radii, simulate_trajectories};
use driftflight::validation::{run_suite, SuiteConfig};
use driftflight::FlightParams;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::config::{CfFormula, DensityFormula, Grid, Only, RunConfig};
use crate::error::CliError;

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn echo(command: &str, cfg: &RunConfig, params: &FlightParams, extra: Value) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("params".into(), json!(params));
    m.insert("seed".into(), json!(cfg.seed()));
    m.insert("out".into(), json!(cfg.out.as_ref().map(|p| p.display().to_string())));
    if let Value::Object(extra) = extra {
        m.extend(extra);
    }
    Value::Object(m)
}

fn write_to(path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

struct Csv {
    body: String,
}

impl Csv {
    fn new(meta: &Value, columns: &[String]) -> Self {
        let mut body = format!("# {meta}\n");
        body.push_str(&columns.join(","));
        body.push('\n');
        Csv { body }
    }

    fn row(&mut self, cells: &[String]) {
        self.body.push_str(&cells.join(","));
        self.body.push('\n');
    }
}

fn names(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

fn grid_rows(csv: &mut Csv, points: &[Vec<f64>], values: Vec<Vec<f64>>) {
    for (p, v) in points.iter().zip(values) {
        let cells: Vec<String> = p.iter().chain(&v).map(|&x| num(x)).collect();
        csv.row(&cells);
    }
}

fn eval_grid<F>(points: &[Vec<f64>], f: F) -> Result<Vec<Vec<f64>>, CliError>
where
    F: Fn(&[f64]) -> driftflight::Result<Vec<f64>> + Sync,
{
    points.par_iter().map(|p| f(p).map_err(CliError::from)).collect()
}

pub fn simulate(cfg: &RunConfig) -> Result<(), CliError> {
    let mut p = cfg.flight_params(false)?;
    p.m = cfg.params.m.unwrap_or(p.d);
    p.validate()?;
    let count = cfg.count()?;
    let seed = cfg.seed();
    let meta = echo(
        "simulate",
        cfg,
        &p,
        json!({ "count": count, "trajectories": cfg.trajectories.as_ref().map(|t| t.display().to_string()) }),
    );
    let mut columns = vec!["replicate".to_string()];
    columns.extend(names("x", p.d));
    let mut csv = Csv::new(&meta, &columns);
    let finals: Vec<Vec<f64>> = match &cfg.trajectories {
        Some(path) => {
            let trajs = simulate_trajectories(&p, count, seed)?;
            let mut cols = vec!["replicate".to_string(), "segment".into(), "t_k".into()];
            cols.extend(names("x", p.d));
            let mut tcsv = Csv::new(&meta, &cols);
            for (i, tr) in trajs.iter().enumerate() {
                for (k, (bp, t)) in tr.breakpoints().iter().zip(tr.times()).enumerate() {
                    let mut cells = vec![i.to_string(), k.to_string(), num(*t)];
                    cells.extend(bp.iter().map(|&x| num(x)));
                    tcsv.row(&cells);
                }
            }
            write_to(Some(path), &tcsv.body)?;
            trajs.iter().map(|t| t.final_position().to_vec()).collect()
        }
        None => simulate_batch(&p, count, seed)?,
    };
    for (i, x) in finals.iter().enumerate() {
        let mut cells = vec![i.to_string()];
        cells.extend(x.iter().map(|&v| num(v)));
        csv.row(&cells);
    }
    write_to(cfg.out.as_deref(), &csv.body)?;
    if let Some(out) = &cfg.out {
        let sidecar = PathBuf::from(format!("{}.json", out.display()));
        let text = serde_json::to_string_pretty(&meta).expect("config serializes");
        write_to(Some(&sidecar), &(text + "\n"))?;
    }
    Ok(())
}

pub fn density(cfg: &RunConfig) -> Result<(), CliError> {
    let formula = cfg.formula(DensityFormula::Projected)?;
    let p = cfg.flight_params(formula.full_space())?;
    let ct = p.reach();
    let (axes, lo) = match formula {
        DensityFormula::RadialProjected | DensityFormula::RadialNu1 => (1, 0.0),
        DensityFormula::Projected => (p.m, -ct),
        DensityFormula::Nu1 | DensityFormula::Nu1Closed => (p.d, -ct),
    };
    let grid = Grid::resolve(cfg, axes, lo, ct)?;
    let points = grid.points();
    // fail on parameter mismatch even when the grid is empty or outside the support
    let probe = vec![0.0; axes];
    let f = |x: &[f64]| -> driftflight::Result<Vec<f64>> {
        Ok(vec![match formula {
            DensityFormula::Projected => density_projection(&p, x)?,
            DensityFormula::Nu1 => density_nu1(&p, x)?,
            DensityFormula::Nu1Closed => density_nu1_closed(&p, x)?,
            DensityFormula::RadialProjected => radial_density_projection(&p, x[0])?,
            DensityFormula::RadialNu1 => radial_density_nu1(&p, x[0])?,
        }])
    };
    f(&probe)?;
    let values = eval_grid(&points, f)?;
    let meta = echo("density", cfg, &p, json!({ "formula": formula, "grid": grid }));
    let mut columns = if formula.radial() { vec!["r".to_string()] } else { names("x", axes) };
    columns.push("density".into());
    let mut csv = Csv::new(&meta, &columns);
    grid_rows(&mut csv, &points, values);
    write_to(cfg.out.as_deref(), &csv.body)
}

pub fn cf(cfg: &RunConfig) -> Result<(), CliError> {
    let formula = cfg.formula(CfFormula::Projected)?;
    let p = cfg.flight_params(formula == CfFormula::Nu1)?;
    let axes = if formula == CfFormula::Nu1 { p.d } else { p.m };
    let reach = 10.0 / p.reach();
    let grid = Grid::resolve(cfg, axes, -reach, reach)?;
    let points = grid.points();
    let f = |a: &[f64]| -> driftflight::Result<Vec<f64>> {
        Ok(vec![match formula {
            CfFormula::Projected => cf_projection(&CfQuery::new(p, a.to_vec())?)?,
            CfFormula::Nu1 => cf_nu1(&p, a)?,
        }])
    };
    f(&vec![0.0; axes])?;
    let values = eval_grid(&points, f)?;
    let meta = echo("cf", cfg, &p, json!({ "formula": formula, "grid": grid }));
    let mut columns = names("alpha", axes);
    columns.push("cf".into());
    let mut csv = Csv::new(&meta, &columns);
    grid_rows(&mut csv, &points, values);
    write_to(cfg.out.as_deref(), &csv.body)
}

pub fn cdf(cfg: &RunConfig) -> Result<(), CliError> {
    let p = cfg.flight_params(false)?;
    let grid = Grid::resolve(cfg, 1, 0.0, p.reach())?;
    let points = grid.points();
    let radii: Vec<f64> = points.iter().map(|x| x[0]).collect();
    let values = cdf_radial_sorted(&p, &radii)?;
    let meta = echo("cdf", cfg, &p, json!({ "grid": grid }));
    let mut csv = Csv::new(&meta, &["r".to_string(), "cdf".to_string()]);
    grid_rows(&mut csv, &points, values.into_iter().map(|v| vec![v]).collect());
    write_to(cfg.out.as_deref(), &csv.body)
}

pub fn moments(cfg: &RunConfig) -> Result<(), CliError> {
    let p = cfg.flight_params(false)?;
    let orders = cfg.orders.clone().unwrap_or_else(|| vec![1, 2, 4]);
    if orders.is_empty() {
        return Err(CliError::Usage("--orders must list at least one order".into()));
    }
    let count = cfg.count()?;
    let radii = simulate_projected_radii(&p, count, cfg.seed())?;
    let meta = echo("moments", cfg, &p, json!({ "orders": orders, "count": count }));
    let columns: Vec<String> = ["order", "closed_form", "mc_mean", "mc_se"].iter().map(|s| s.to_string()).collect();
    let mut csv = Csv::new(&meta, &columns);
    let n = count as f64;
    for &k in &orders {
        let exact = radial_moment(&p, k)?;
        let xs: Vec<f64> = radii.iter().map(|r| r.powi(k as i32)).collect();
        let mean = xs.iter().sum::<f64>() / n;
        let se = if count > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) / n).sqrt()
        } else {
            f64::NAN
        };
        csv.row(&[k.to_string(), num(exact), num(mean), num(se)]);
    }
    write_to(cfg.out.as_deref(), &csv.body)
}

pub fn mixture(cfg: &RunConfig) -> Result<(), CliError> {
    let p = cfg.flight_params(false)?;
    let mp = MixtureParams::new(cfg.lambda.unwrap_or(1.0), p, cfg.n_max.unwrap_or(DEFAULT_N_MAX))?;
    let grid = Grid::resolve(cfg, p.m, -p.reach(), p.reach())?;
    let points = grid.points();
    let values = eval_grid(&points, |x| {
        let v = unconditional_density_projection(&mp, x)?;
        Ok(vec![v.value, v.tail_bound])
    })?;
    let meta = echo("mixture", cfg, &p, json!({ "lambda": mp.lambda, "n_max": mp.n_max, "grid": grid }));
    let mut columns = names("x", p.m);
    columns.extend(["density".to_string(), "tail_bound".to_string()]);
    let mut csv = Csv::new(&meta, &columns);
    grid_rows(&mut csv, &points, values);
    write_to(cfg.out.as_deref(), &csv.body)
}

pub fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    let p = cfg.flight_params(false)?;
    let only = cfg.only.unwrap_or(Only::All);
    let mut suite = SuiteConfig::full(cfg.seed());
    if !matches!(only, Only::All | Only::Identities) {
        suite.identities.clear();
    }
    if !matches!(only, Only::All | Only::Gof | Only::GofRadial) {
        suite.radial.clear();
    }
    if !matches!(only, Only::All | Only::Gof | Only::GofCf) {
        suite.cf.clear();
    }
    if let Some(count) = cfg.count {
        cfg.count()?;
        suite.radial.iter_mut().for_each(|c| c.sample_count = count);
        suite.cf.iter_mut().for_each(|c| c.sample_count = count);
    }
    let report = run_suite(&suite);
    let meta = echo("validate", cfg, &p, json!({ "only": only, "count": cfg.count }));
    let doc = json!({ "config": meta, "report": report });
    let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    write_to(cfg.out.as_deref(), &text)?;
    if report.success {
        Ok(())
    } else {
        let ids: Vec<&str> = report.failures().map(|c| c.check_id.as_str()).collect();
        Err(CliError::ValidationFailed(format!("{} check(s) failed: {}", ids.len(), ids.join(", "))))
    }
}
