use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use fracgreen::analysis::{
    check_boundary_derivative, check_complete_monotonicity, check_cross_method, check_h_factorization,
    check_normalization, check_unimodality, scan_zeros, PropertyReport, ZeroScanResult, DEFAULT_KS_THRESHOLD,
};
use fracgreen::params::{Grid, KernelParams};
use fracgreen::periodic_green::{g_eval, DEFAULT_TOL};
use fracgreen::stochastic::{mc_g_jtp, mc_g_poisson, McConfig};

use crate::config::Config;
use crate::output::{to_csv, to_csv_with_header, to_json, Format, OutputRecord, TableRow, RECORD_HEADER, TABLE_HEADER};
use crate::ranges::collect_values;
use crate::{Estimator, EvalArgs, Failure, McArgs, Suite, TableArgs, VerifyArgs, ZerosArgs};

const CROSS_TOL: f64 = 1e-6;
const BOUNDARY_EPSILONS: [f64; 3] = [0.1, 0.01, 0.001];
const NORMALIZATION_INTERVALS: usize = 2000;
const FACTORIZATION_SAMPLES: u64 = 10_000;

fn setting<T: std::str::FromStr>(flag: Option<T>, config: &Config, key: &str, default: T) -> Result<T, Failure> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(config.get(key).map_err(Failure::Domain)?.unwrap_or(default)),
    }
}

fn format_setting(flag: Option<Format>, config: &Config, default: Format) -> Result<Format, Failure> {
    setting(flag, config, "format", default)
}

fn tol_setting(flag: Option<f64>, config: &Config) -> Result<f64, Failure> {
    let tol = setting(flag, config, "tol", DEFAULT_TOL)?;
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Failure::Domain(format!("--tol = {tol} outside allowed range (0, inf)")))
    }
}

/// Worker count: explicit flag, then `FRACGREEN_THREADS`, then the config file.
fn configure_threads(explicit: Option<usize>, config: &Config) -> Result<(), Failure> {
    let from_env = match std::env::var("FRACGREEN_THREADS") {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Domain(format!("FRACGREEN_THREADS = '{v}' is not a positive integer")))?,
        ),
        Err(_) => None,
    };
    let threads = match explicit.or(from_env) {
        Some(n) => Some(n),
        None => config.get::<usize>("threads").map_err(Failure::Domain)?,
    };
    if let Some(n) = threads {
        if n == 0 {
            return Err(Failure::Domain("worker count must be at least 1".into()));
        }
        // a pool may already exist when called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn params(alpha: f64, c: f64) -> Result<KernelParams, Failure> {
    Ok(KernelParams::new(alpha, c)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Domain(format!("--out {}: cannot write: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn values(flag: &str, raw: &[String]) -> Result<Vec<f64>, Failure> {
    collect_values(raw).map_err(|e| Failure::Domain(format!("--{flag}: {e}")))
}

pub fn eval(a: &EvalArgs, config: &Config) -> Result<(), Failure> {
    let tol = tol_setting(a.tol, config)?;
    let format = format_setting(a.format, config, Format::Csv)?;
    let p = params(a.alpha, a.c)?;
    let xs = values("x", &a.x)?;
    let method = a.method.map(|m| m.method());
    let records = xs
        .iter()
        .map(|&x| Ok(OutputRecord::new(a.alpha, a.c, x, &g_eval(&p, x, method, tol)?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let text = match format {
        Format::Csv => to_csv_with_header(&RECORD_HEADER, &records),
        Format::Json => to_json(&records),
    }
    .map_err(Failure::Domain)?;
    emit(&text, None)
}

pub fn verify(a: &VerifyArgs, config: &Config) -> Result<(), Failure> {
    configure_threads(None, config)?;
    let p = params(a.alpha, a.c)?;
    let grid_points = setting(a.grid_points, config, "grid_points", 50usize)?;
    if grid_points < 2 {
        return Err(Failure::Domain(format!("--grid-points = {grid_points} outside allowed range >= 2")));
    }
    let p_max = setting(a.p_max, config, "p_max", 6u32)?;
    let seed = setting(a.seed, config, "seed", 0u64)?;
    let ks_threshold = setting(a.ks_threshold, config, "ks_threshold", DEFAULT_KS_THRESHOLD)?;
    let grid = Grid::interior(grid_points);
    let suites: Vec<Suite> = match a.suite {
        Suite::All => vec![
            Suite::Cm,
            Suite::Unimodal,
            Suite::Boundary,
            Suite::Cross,
            Suite::Factorization,
            Suite::Normalization,
        ],
        s => vec![s],
    };
    let mut reports: Vec<PropertyReport> = Vec::new();
    for s in suites {
        let r = match s {
            Suite::Cm => check_complete_monotonicity(&p, &grid, p_max)?,
            Suite::Unimodal => check_unimodality(&p, &grid)?,
            Suite::Boundary => check_boundary_derivative(&p, &BOUNDARY_EPSILONS)?,
            Suite::Cross => check_cross_method(&p, &grid, CROSS_TOL)?,
            Suite::Factorization => {
                check_h_factorization(&p, FACTORIZATION_SAMPLES, &McConfig::with_seed(seed), ks_threshold)?
            }
            Suite::Normalization => {
                // G has an integrable singularity at the origin for alpha <= 1
                let tol = if p.alpha() > 1.0 { 1e-4 } else { 1e-3 };
                check_normalization(&p, NORMALIZATION_INTERVALS, tol)?
            }
            Suite::All => unreachable!(),
        };
        reports.push(r);
    }
    let text = to_json(&reports).map_err(Failure::Domain)?;
    emit(&text, a.out.as_deref())?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass && !r.informational())
        .map(|r| r.summary())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("check failed: {}", failed.join("\ncheck failed: "))))
    }
}

#[derive(Debug, Serialize)]
struct McOutput {
    estimator: &'static str,
    alpha: f64,
    c: f64,
    x: f64,
    mean: f64,
    std_error: f64,
    n_samples: u64,
    seed: u64,
    reference: f64,
    reference_method: String,
    reference_error_bound: f64,
    standardized_deviation: f64,
}

pub fn mc(a: &McArgs, config: &Config) -> Result<(), Failure> {
    configure_threads(None, config)?;
    let p = params(a.alpha, a.c)?;
    let n = setting(a.n, config, "n", 100_000u64)?;
    let seed = setting(a.seed, config, "seed", 0u64)?;
    let format = format_setting(a.format, config, Format::Json)?;
    let cfg = McConfig::with_seed(seed);
    let (name, est) = match a.estimator {
        Estimator::Jtp => ("jtp", mc_g_jtp(&p, a.x, n, &cfg)?),
        Estimator::Poisson => ("poisson", mc_g_poisson(&p, a.x, n, &cfg)?),
    };
    let reference = g_eval(&p, a.x, None, 1e-10)?;
    let out = McOutput {
        estimator: name,
        alpha: a.alpha,
        c: a.c,
        x: a.x,
        mean: est.mean,
        std_error: est.std_error,
        n_samples: est.n_samples,
        seed: est.seed,
        reference: reference.value,
        reference_method: reference.method.name().to_string(),
        reference_error_bound: reference.error_bound,
        standardized_deviation: (est.mean - reference.value) / est.std_error,
    };
    let text = match format {
        Format::Json => to_json(&out),
        Format::Csv => to_csv(&[out]),
    }
    .map_err(Failure::Domain)?;
    emit(&text, None)
}

#[derive(Debug, Serialize)]
struct ZeroRow {
    alpha: f64,
    c: f64,
    resolution: usize,
    method: String,
    sign_changes: usize,
    refined_roots: String,
}

pub fn zeros(a: &ZerosArgs, config: &Config) -> Result<(), Failure> {
    configure_threads(None, config)?;
    let p = params(a.alpha, a.c)?;
    let resolution = setting(a.resolution, config, "resolution", 2000usize)?;
    let format = format_setting(a.format, config, Format::Json)?;
    let r: ZeroScanResult = scan_zeros(&p, resolution)?;
    let text = match format {
        Format::Json => to_json(&r),
        Format::Csv => to_csv(&[ZeroRow {
            alpha: r.alpha,
            c: r.c,
            resolution: r.resolution,
            method: r.method.name().to_string(),
            sign_changes: r.sign_changes,
            refined_roots: r
                .refined_roots
                .iter()
                .map(|v| format!("{v:?}"))
                .collect::<Vec<_>>()
                .join(";"),
        }]),
    }
    .map_err(Failure::Domain)?;
    emit(&text, None)
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

pub fn table(a: &TableArgs, config: &Config) -> Result<(), Failure> {
    configure_threads(a.parallel, config)?;
    let tol = tol_setting(a.tol, config)?;
    let format = format_setting(a.format, config, Format::Csv)?;
    let alphas = sorted(values("alpha", &a.alpha)?);
    let cs = sorted(values("c", &a.c)?);
    let xs = sorted(values("x", &a.x)?);
    let method = a.method.map(|m| m.method());
    let mut jobs = Vec::with_capacity(alphas.len() * cs.len() * xs.len());
    for &al in &alphas {
        for &c in &cs {
            for &x in &xs {
                jobs.push((al, c, x));
            }
        }
    }
    let rows: Vec<TableRow> = jobs
        .par_iter()
        .map(|&(alpha, c, x)| {
            let result = KernelParams::new(alpha, c).and_then(|p| g_eval(&p, x, method, tol));
            match result {
                Ok(v) => TableRow {
                    alpha,
                    c,
                    x,
                    value: Some(v.value),
                    error_bound: Some(v.error_bound),
                    method: Some(v.method.name().to_string()),
                    rigorous: Some(v.rigorous),
                    error: None,
                },
                Err(e) => TableRow {
                    alpha,
                    c,
                    x,
                    value: None,
                    error_bound: None,
                    method: None,
                    rigorous: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let text = match format {
        Format::Csv => to_csv_with_header(&TABLE_HEADER, &rows),
        Format::Json => to_json(&rows),
    }
    .map_err(Failure::Domain)?;
    emit(&text, a.out.as_deref())?;
    if rows.iter().any(|r| r.error.is_none()) {
        Ok(())
    } else {
        Err(Failure::Check("no table row evaluated successfully".into()))
    }
}
