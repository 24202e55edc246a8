//! Executable checks of the structural properties of `G` and `H`.
//!
//! Each check returns a [`PropertyReport`] carrying its threshold, the worst
//! margin seen and one record per evaluation, so a report can be read without
//! the code that produced it.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::line_green::{h_survival, QuadratureConfig, P_MAX};
use crate::params::{validate, GreenValue, Grid, KernelParams, Method};
use crate::periodic_green::{
    g_closed_alpha2, g_closed_alpha2_deriv, g_deriv, g_eval, g_ml, g_periodized, g_prime_ml, g_series, series_terms,
    SeriesConfig,
};
use crate::stochastic::{sample_x_alpha, McConfig, RngStream};

pub const DEFAULT_KS_THRESHOLD: f64 = 0.02;

/// Tolerance used for the individual evaluations behind a check.
const EVAL_TOL: f64 = 1e-11;

/// Pointwise tolerance inside the normalization quadrature; the check itself asks for 1e-4.
const NORMALIZATION_EVAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PropertyKind {
    Positivity,
    MonotoneDecrease,
    CompleteMonotonicity { p_max: u32 },
    BoundaryDerivativeZero,
    CrossMethodConsistency,
    Normalization,
    HFactorization,
    ZeroScan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// One evaluation behind a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detail {
    pub x: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub label: String,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: PropertyKind,
    pub params: KernelParams,
    pub grid: Option<Grid>,
    pub pass: bool,
    pub worst_margin: f64,
    /// `pass` holds iff `worst_margin` is at least this value.
    pub threshold: f64,
    pub criterion: String,
    pub inconclusive: usize,
    pub witness: Option<Detail>,
    /// Method outvoted by the other two, when a cross-method check fails.
    pub minority: Option<Method>,
    pub details: Vec<Detail>,
}

impl PropertyReport {
    fn build(
        property: PropertyKind,
        params: &KernelParams,
        grid: Option<Grid>,
        threshold: f64,
        criterion: impl Into<String>,
        details: Vec<Detail>,
    ) -> Self {
        let worst = details
            .iter()
            .min_by(|a, b| a.margin.total_cmp(&b.margin))
            .cloned();
        let worst_margin = worst.as_ref().map_or(f64::INFINITY, |d| d.margin);
        let pass = worst_margin >= threshold && details.iter().all(|d| d.status != Status::Fail);
        Self {
            property,
            params: *params,
            grid,
            pass,
            worst_margin,
            threshold,
            criterion: criterion.into(),
            inconclusive: details.iter().filter(|d| d.status == Status::Inconclusive).count(),
            witness: worst,
            minority: None,
            details,
        }
    }

    /// Informational reports never count as failures.
    pub fn informational(&self) -> bool {
        self.property == PropertyKind::ZeroScan
    }

    /// One line naming the property, verdict and witness.
    pub fn summary(&self) -> String {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        let mut s = format!(
            "{:?} {} {verdict} worst_margin={:e} threshold={:e}",
            self.property, self.params, self.worst_margin, self.threshold
        );
        if !self.pass {
            if let Some(w) = &self.witness {
                s.push_str(&format!(" witness x={} order={:?} ({})", w.x, w.order, w.label));
            }
            if let Some(m) = self.minority {
                s.push_str(&format!(" minority={}", m.name()));
            }
        }
        s
    }
}

fn require_alpha_le2(params: &KernelParams) -> Result<()> {
    if params.alpha() <= 2.0 {
        Ok(())
    } else {
        Err(Error::out_of_domain("alpha", params.alpha(), "(0, 2]"))
    }
}

fn require_open_grid(grid: &Grid) -> Result<()> {
    match grid.points().last() {
        Some(&last) if last < PI => Ok(()),
        Some(&last) => Err(Error::out_of_domain("grid", last, "points in (0, pi)")),
        None => Err(Error::out_of_domain("grid", f64::NAN, "non-empty")),
    }
}

fn deriv(params: &KernelParams, x: f64, p: u32) -> Result<GreenValue> {
    if params.is_alpha2() {
        g_closed_alpha2_deriv(params.c(), x, p)
    } else {
        g_deriv(params, x, p, EVAL_TOL)
    }
}

/// `(-1)^p G^{(p)}(x) > 0` for `p = 0..=p_max` on the grid. The margin of each
/// evaluation is `((-1)^p G^{(p)} - error) / |G^{(p)}|`; the `p = 0` rows are the
/// positivity check.
pub fn check_complete_monotonicity(params: &KernelParams, grid: &Grid, p_max: u32) -> Result<PropertyReport> {
    require_alpha_le2(params)?;
    require_open_grid(grid)?;
    if p_max > P_MAX {
        return Err(Error::out_of_domain("p_max", p_max as f64, format!("[0, {P_MAX}]")));
    }
    let jobs: Vec<(f64, u32)> = grid
        .points()
        .iter()
        .flat_map(|&x| (0..=p_max).map(move |p| (x, p)))
        .collect();
    let details = jobs
        .par_iter()
        .map(|&(x, p)| {
            let v = deriv(params, x, p)?;
            let signed = if p % 2 == 0 { v.value } else { -v.value };
            let margin = (signed - v.error_bound) / v.value.abs().max(f64::MIN_POSITIVE);
            Ok(Detail {
                x,
                order: Some(p),
                label: format!("(-1)^{p} G^({p})"),
                value: v.value,
                bound: v.error_bound,
                margin,
                status: if margin > 0.0 { Status::Pass } else { Status::Fail },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut r = PropertyReport::build(
        PropertyKind::CompleteMonotonicity { p_max },
        params,
        Some(grid.clone()),
        f64::MIN_POSITIVE,
        "(-1)^p G^(p)(x) exceeds its error bound for every p <= p_max and grid x",
        details,
    );
    r.pass = r.worst_margin > 0.0;
    Ok(r)
}

/// `G'(π) = 0` exactly, and `|G'(π - ε)|` strictly decreasing along the given,
/// decreasing, `ε` list. Margins are relative decreases `(|G'_i| - |G'_{i+1}|) / |G'_i|`.
pub fn check_boundary_derivative(params: &KernelParams, epsilons: &[f64]) -> Result<PropertyReport> {
    require_alpha_le2(params)?;
    if epsilons.is_empty() {
        return Err(Error::out_of_domain("epsilons", f64::NAN, "non-empty"));
    }
    for w in epsilons.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::out_of_domain("epsilons", w[1], "strictly decreasing"));
        }
    }
    if let Some(&e) = epsilons.iter().find(|&&e| !(e > 0.0 && e < 0.5)) {
        return Err(Error::out_of_domain("epsilons", e, "(0, 0.5)"));
    }
    let at_pi = if params.is_alpha2() {
        g_closed_alpha2_deriv(params.c(), PI, 1)?
    } else {
        g_prime_ml(params, PI, EVAL_TOL)?
    };
    let mut details = vec![Detail {
        x: PI,
        order: Some(1),
        label: "G'(pi)".into(),
        value: at_pi.value,
        bound: at_pi.error_bound,
        margin: if at_pi.value == 0.0 { 1.0 } else { -at_pi.value.abs() },
        status: if at_pi.value == 0.0 { Status::Pass } else { Status::Fail },
    }];
    let slopes = epsilons
        .iter()
        .map(|&e| deriv(params, PI - e, 1))
        .collect::<Result<Vec<_>>>()?;
    let mut prev: Option<f64> = None;
    for (&e, v) in epsilons.iter().zip(&slopes) {
        let mag = v.value.abs();
        let margin = match prev {
            Some(p) => (p - mag) / p.max(f64::MIN_POSITIVE),
            None => 1.0,
        };
        details.push(Detail {
            x: PI - e,
            order: Some(1),
            label: format!("|G'(pi - {e})|"),
            value: v.value,
            bound: v.error_bound,
            margin,
            status: if margin > 0.0 { Status::Pass } else { Status::Fail },
        });
        prev = Some(mag);
    }
    let mut points: Vec<f64> = epsilons.iter().map(|e| PI - e).collect();
    points.push(PI);
    let grid = Grid::new(points)?;
    let mut r = PropertyReport::build(
        PropertyKind::BoundaryDerivativeZero,
        params,
        Some(grid),
        f64::MIN_POSITIVE,
        "G'(pi) == 0 exactly and |G'(pi - eps)| strictly decreases as eps decreases",
        details,
    );
    r.pass = r.worst_margin > 0.0;
    Ok(r)
}

fn method_values(params: &KernelParams, x: f64, tol: f64) -> Result<Vec<(Method, Option<GreenValue>)>> {
    let eval_tol = (1e-2 * tol).max(EVAL_TOL);
    let sharp = eval_tol.min(1e-10);
    let mut series = None;
    for t in [sharp, eval_tol] {
        match g_series(params, x, &SeriesConfig::with_tol(t)) {
            Ok(v) => {
                series = Some(v);
                break;
            }
            Err(Error::ToleranceUnreachable(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let mut out = vec![(Method::Series, series)];
    out.push((Method::Periodized, Some(g_periodized(params, x, eval_tol)?)));
    out.push((Method::MlIntegral, Some(g_ml(params, x, eval_tol)?)));
    if params.is_alpha2() {
        out.push((Method::ClosedForm2, Some(g_closed_alpha2(params.c(), x)?)));
    }
    Ok(out)
}

/// Pairwise agreement of Series, Periodized and MlIntegral (and ClosedForm2 at
/// `α = 2`): each difference must be within the summed error bounds and within
/// `tol`. The margin of a pair is `min(tol, bound_a + bound_b) - |a - b|`.
pub fn check_cross_method(params: &KernelParams, grid: &Grid, tol: f64) -> Result<PropertyReport> {
    require_alpha_le2(params)?;
    validate(params, Method::Periodized)?;
    if !(tol > 0.0) {
        return Err(Error::out_of_domain("tol", tol, "(0, inf)"));
    }
    let per_point = grid
        .points()
        .par_iter()
        .map(|&x| method_values(params, x, tol).map(|v| (x, v)))
        .collect::<Result<Vec<_>>>()?;
    let mut details = Vec::new();
    let mut suspects: Vec<Method> = Vec::new();
    for (x, values) in &per_point {
        let available: Vec<(Method, GreenValue)> = values.iter().filter_map(|(m, v)| v.map(|v| (*m, v))).collect();
        for (m, v) in values {
            if v.is_none() {
                details.push(Detail {
                    x: *x,
                    order: None,
                    label: format!("{} skipped: term cap", m.name()),
                    value: f64::NAN,
                    bound: f64::NAN,
                    margin: f64::INFINITY,
                    status: Status::Inconclusive,
                });
            }
        }
        let mut disagree = vec![0usize; available.len()];
        for i in 0..available.len() {
            for j in i + 1..available.len() {
                let (ma, a) = available[i];
                let (mb, b) = available[j];
                let d = (a.value - b.value).abs();
                let margin = tol.min(a.error_bound + b.error_bound) - d;
                if margin < 0.0 {
                    disagree[i] += 1;
                    disagree[j] += 1;
                }
                details.push(Detail {
                    x: *x,
                    order: None,
                    label: format!("{} vs {}", ma.name(), mb.name()),
                    value: d,
                    bound: a.error_bound + b.error_bound,
                    margin,
                    status: if margin >= 0.0 { Status::Pass } else { Status::Fail },
                });
            }
        }
        // a single method at odds with all others while the others agree
        let n = available.len();
        if n >= 3 {
            let worst: Vec<usize> = (0..n).filter(|&i| disagree[i] == n - 1).collect();
            let total: usize = disagree.iter().sum::<usize>() / 2;
            if worst.len() == 1 && total == n - 1 {
                suspects.push(available[worst[0]].0);
            }
        }
    }
    let mut r = PropertyReport::build(
        PropertyKind::CrossMethodConsistency,
        params,
        Some(grid.clone()),
        0.0,
        format!("|a - b| <= min({tol:e}, bound_a + bound_b) for every pair of methods"),
        details,
    );
    if !r.pass && !suspects.is_empty() && suspects.iter().all(|&m| m == suspects[0]) {
        r.minority = Some(suspects[0]);
    }
    Ok(r)
}

/// Distribution function of the law with density `c H_{α,c}` on the real line.
pub fn h_law_cdf(params: &KernelParams, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if y == 0.0 {
        return Ok(0.5);
    }
    let upper = params.c() * h_survival(params, y.abs(), cfg)?.value;
    Ok(if y > 0.0 { 1.0 - upper } else { upper })
}

/// KS distance between draws of `c^{-1/α} E X_α` (`E` two-sided exponential,
/// `X_2 ≡ 1`) and the distribution with density `c H_{α,c}`. The margin is
/// `ks_threshold - D`.
pub fn check_h_factorization(
    params: &KernelParams,
    n_samples: u64,
    mc: &McConfig,
    ks_threshold: f64,
) -> Result<PropertyReport> {
    require_alpha_le2(params)?;
    if n_samples < 10_000 {
        return Err(Error::out_of_domain("n_samples", n_samples as f64, ">= 10000"));
    }
    if !(ks_threshold > 0.0 && ks_threshold < 1.0) {
        return Err(Error::out_of_domain("ks_threshold", ks_threshold, "(0, 1)"));
    }
    let alpha = params.alpha();
    let scale = params.c().powf(-1.0 / alpha);
    let chunk = mc.chunk_size.max(1);
    let chunks = n_samples.div_ceil(chunk);
    let draw_chunk = |i: u64| -> Result<Vec<f64>> {
        let mut rng = RngStream::new(mc.seed, i);
        let len = chunk.min(n_samples - i * chunk);
        (0..len)
            .map(|_| {
                let sign = if rng.uniform() < 0.5 { -1.0 } else { 1.0 };
                let e = rng.exponential();
                let x = if params.is_alpha2() { 1.0 } else { sample_x_alpha(alpha, &mut rng)? };
                Ok(sign * scale * e * x)
            })
            .collect()
    };
    let parts = (0..chunks).into_par_iter().map(draw_chunk).collect::<Result<Vec<_>>>()?;
    let mut draws: Vec<f64> = parts.into_iter().flatten().collect();
    draws.sort_by(f64::total_cmp);
    let cfg = QuadratureConfig::with_tol(1e-10);
    let cdf = draws
        .par_iter()
        .map(|&y| h_law_cdf(params, y, &cfg))
        .collect::<Result<Vec<_>>>()?;
    let d = crate::ks::ks_from_sorted_cdf(&cdf);
    let mid = draws.len() / 2;
    let median = if draws.len() % 2 == 0 {
        0.5 * (draws[mid - 1] + draws[mid])
    } else {
        draws[mid]
    };
    let details = vec![
        Detail {
            x: f64::NAN,
            order: None,
            label: format!("KS statistic, n={n_samples}, seed={}", mc.seed),
            value: d,
            bound: ks_threshold,
            margin: ks_threshold - d,
            status: if d < ks_threshold { Status::Pass } else { Status::Fail },
        },
        Detail {
            x: f64::NAN,
            order: None,
            label: "sample median".into(),
            value: median,
            bound: f64::NAN,
            margin: f64::INFINITY,
            status: Status::Pass,
        },
    ];
    let mut r = PropertyReport::build(
        PropertyKind::HFactorization,
        params,
        None,
        0.0,
        format!("KS distance below {ks_threshold}"),
        details,
    );
    r.pass = d < ks_threshold;
    Ok(r)
}

/// `G > 0` and `G` strictly decreasing along the grid. Margins are measured in
/// units of the combined error bars: above 1 the inequality is certified,
/// within `[-1, 1]` it is inconclusive, below `-1` it is violated.
pub fn check_unimodality(params: &KernelParams, grid: &Grid) -> Result<PropertyReport> {
    require_alpha_le2(params)?;
    let values = grid
        .points()
        .par_iter()
        .map(|&x| g_eval(params, x, None, 1e-10))
        .collect::<Result<Vec<_>>>()?;
    let classify = |m: f64| {
        if m > 1.0 {
            Status::Pass
        } else if m >= -1.0 {
            Status::Inconclusive
        } else {
            Status::Fail
        }
    };
    let mut details = Vec::new();
    for (&x, v) in grid.points().iter().zip(&values) {
        let margin = v.value / v.error_bound.max(f64::MIN_POSITIVE);
        details.push(Detail {
            x,
            order: Some(0),
            label: format!("G > 0 ({})", v.method.name()),
            value: v.value,
            bound: v.error_bound,
            margin,
            status: classify(margin),
        });
    }
    for (w, pair) in grid.points().windows(2).zip(values.windows(2)) {
        let drop = pair[0].value - pair[1].value;
        let bars = pair[0].error_bound + pair[1].error_bound;
        let margin = drop / bars.max(f64::MIN_POSITIVE);
        details.push(Detail {
            x: w[1],
            order: None,
            label: format!("G({}) - G({})", w[0], w[1]),
            value: drop,
            bound: bars,
            margin,
            status: classify(margin),
        });
    }
    Ok(PropertyReport::build(
        PropertyKind::MonotoneDecrease,
        params,
        Some(grid.clone()),
        -1.0,
        "G and its successive drops exceed their error bars; ties within the bars are inconclusive",
        details,
    ))
}

/// `∫_{-π}^{π} G = 1/c` by composite Simpson on `n_intervals` (made even) in
/// `x = π u^m`, `m = ⌈2/α⌉`, which removes the `|x|^{α-1}` behaviour at the origin.
/// The margin is `tol - |I - 1/c|`.
pub fn check_normalization(params: &KernelParams, n_intervals: usize, tol: f64) -> Result<PropertyReport> {
    require_alpha_le2(params)?;
    let (value, m) = normalization_integral(params, n_intervals)?;
    let target = 1.0 / params.c();
    let err = (value - target).abs();
    let details = vec![Detail {
        x: f64::NAN,
        order: None,
        label: format!("Simpson, {n_intervals} intervals, x = pi u^{m}"),
        value,
        bound: err,
        margin: tol - err,
        status: if err <= tol { Status::Pass } else { Status::Fail },
    }];
    Ok(PropertyReport::build(
        PropertyKind::Normalization,
        params,
        None,
        0.0,
        format!("|integral - 1/c| <= {tol:e}"),
        details,
    ))
}

/// Above this many series terms the periodization is the cheaper route.
const CHEAP_SERIES_TERMS: u64 = 20_000;

/// `G(x)` from whichever of the series or the periodization is cheaper at `x`.
fn quick_value(params: &KernelParams, x: f64, tol: f64) -> Result<f64> {
    if params.alpha() < 2.0 && x > 0.0 {
        let cfg = SeriesConfig::with_tol(tol);
        match series_terms(params, x, &cfg) {
            Ok(n) if n <= CHEAP_SERIES_TERMS => {}
            Ok(_) | Err(Error::ToleranceUnreachable(_)) => return Ok(g_periodized(params, x, tol)?.value),
            Err(e) => return Err(e),
        }
    }
    Ok(g_eval(params, x, None, tol)?.value)
}

/// `(∫_{-π}^{π} G, m)` with the substitution exponent `m` used.
pub fn normalization_integral(params: &KernelParams, n_intervals: usize) -> Result<(f64, u32)> {
    let n = (n_intervals.max(2) + 1) & !1;
    let m = (2.0 / params.alpha()).ceil().max(1.0) as u32;
    let mf = m as f64;
    let h = 1.0 / n as f64;
    let f = |i: usize| -> Result<f64> {
        if i == 0 {
            // u^{mα-1} → 0 for mα > 1, and G(0) finite when α > 1
            return Ok(if params.alpha() > 1.0 && m == 1 {
                quick_value(params, 0.0, NORMALIZATION_EVAL_TOL)? * PI
            } else {
                0.0
            });
        }
        let u = i as f64 * h;
        let x = PI * u.powi(m as i32);
        let jac = PI * mf * u.powi(m as i32 - 1);
        Ok(quick_value(params, x, NORMALIZATION_EVAL_TOL)? * jac)
    };
    let values = (0..=n).into_par_iter().map(f).collect::<Result<Vec<_>>>()?;
    let mut s = values[0] + values[n];
    for (i, v) in values.iter().enumerate().take(n).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    Ok((2.0 * s * h / 3.0, m))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroScanResult {
    pub alpha: f64,
    pub c: f64,
    pub resolution: usize,
    pub method: Method,
    pub sign_changes: usize,
    pub bracketing_intervals: Vec<(f64, f64)>,
    pub refined_roots: Vec<f64>,
    /// Smallest grid point whose sign was certified.
    pub first_certified_x: Option<f64>,
    /// Grid points skipped because the series could not certify a sign there.
    pub uncertified_points: Vec<f64>,
}

/// Certified sign of `G` at `x`: `Some(±1)` when `|G|` exceeds its rigorous bound.
fn certified_sign(params: &KernelParams, x: f64, cfg: &SeriesConfig) -> Result<Option<f64>> {
    let v = match g_series(params, x, cfg) {
        Ok(v) => v,
        Err(Error::ToleranceUnreachable(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(if v.value > v.error_bound {
        Some(1.0)
    } else if v.value < -v.error_bound {
        Some(-1.0)
    } else {
        None
    })
}

/// Sign changes of `G_{α,c}` on `(0, π]` for `α ∈ [2, 4]` from the rigorous
/// series, at `resolution` equally spaced points, each bracket bisected to width `1e-8`.
/// `|α - 2| ≤ 1e-9` is treated as `α = 2` and read off the closed form.
pub fn scan_zeros(params: &KernelParams, resolution: usize) -> Result<ZeroScanResult> {
    let alpha = params.alpha();
    if resolution < 100 {
        return Err(Error::out_of_domain("resolution", resolution as f64, ">= 100"));
    }
    if !(alpha >= 2.0 - 1e-9 && alpha <= 4.0) {
        return Err(Error::out_of_domain("alpha", alpha, "[2, 4]"));
    }
    let xs: Vec<f64> = (1..=resolution).map(|i| PI * i as f64 / resolution as f64).collect();
    if (alpha - 2.0).abs() <= 1e-9 {
        let mut first = None;
        let mut changes = 0;
        let mut prev = None;
        for &x in &xs {
            let s = g_closed_alpha2(params.c(), x)?.value.signum();
            if first.is_none() {
                first = Some(x);
            }
            if prev.is_some_and(|p: f64| p != s) {
                changes += 1;
            }
            prev = Some(s);
        }
        return Ok(ZeroScanResult {
            alpha: 2.0,
            c: params.c(),
            resolution,
            method: Method::ClosedForm2,
            sign_changes: changes,
            bracketing_intervals: Vec::new(),
            refined_roots: Vec::new(),
            first_certified_x: first,
            uncertified_points: Vec::new(),
        });
    }
    let cfg = SeriesConfig::with_tol(1e-12);
    let signs = xs
        .par_iter()
        .map(|&x| certified_sign(params, x, &cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut brackets = Vec::new();
    let mut uncertified = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    let mut first = None;
    for (&x, s) in xs.iter().zip(&signs) {
        match *s {
            None => uncertified.push(x),
            Some(s) => {
                if first.is_none() {
                    first = Some(x);
                }
                if let Some((lx, ls)) = last {
                    if ls != s {
                        brackets.push((lx, x));
                    }
                }
                last = Some((x, s));
            }
        }
    }
    let roots = brackets
        .par_iter()
        .map(|&(a, b)| bisect(params, a, b, &cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(ZeroScanResult {
        alpha,
        c: params.c(),
        resolution,
        method: Method::Series,
        sign_changes: brackets.len(),
        bracketing_intervals: brackets,
        refined_roots: roots,
        first_certified_x: first,
        uncertified_points: uncertified,
    })
}

fn bisect(params: &KernelParams, mut a: f64, mut b: f64, cfg: &SeriesConfig) -> Result<f64> {
    let sa = certified_sign(params, a, cfg)?;
    while b - a > 1e-8 {
        let m = 0.5 * (a + b);
        match certified_sign(params, m, cfg)? {
            Some(s) if Some(s) == sa => a = m,
            Some(_) => b = m,
            // sign not resolvable at this width
            None => break,
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64, c: f64) -> KernelParams {
        KernelParams::new(a, c).unwrap()
    }

    #[test]
    fn domain_checks() {
        let g = Grid::interior(5);
        assert!(check_complete_monotonicity(&params(2.5, 1.0), &g, 6).is_err());
        assert!(check_complete_monotonicity(&params(1.0, 1.0), &g, 9).is_err());
        assert!(check_complete_monotonicity(&params(1.0, 1.0), &Grid::up_to_pi(5), 2).is_err());
        assert!(check_boundary_derivative(&params(1.0, 1.0), &[0.01, 0.1]).is_err());
        assert!(scan_zeros(&params(1.5, 1.0), 200).is_err());
        assert!(scan_zeros(&params(3.0, 1.0), 50).is_err());
    }

    #[test]
    fn alpha_two_scan() {
        let r = scan_zeros(&params(2.0, 1.0), 200).unwrap();
        assert_eq!(r.sign_changes, 0);
        assert_eq!(r.method, Method::ClosedForm2);
        let r = scan_zeros(&params(2.0 + 1e-10, 1.0), 200).unwrap();
        assert_eq!(r.method, Method::ClosedForm2);
    }
}
