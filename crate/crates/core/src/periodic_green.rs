//! The periodic Green function
//!
//! ```text
//! G_{α,c}(x) = (1/2π) Σ_{n∈Z} cos(nx) / (c + |n|^α)
//! ```
//!
//! evaluated on `(0, π]` by four deterministic routes:
//!
//! * [`g_series`]: the Fourier series with a rigorous Dirichlet-kernel tail bound,
//!   optionally accelerated by one summation-by-parts pass;
//! * [`g_periodized`]: `Σ_{n≥0} H(x + 2nπ) + H(2(n+1)π - x)`, leading terms from
//!   [`crate::line_green`] and the remainder summed in closed form under the
//!   Laplace integral;
//! * [`g_ml`]: the Poisson-kernel integral against `t^{α-1} E_{α,α}(-c t^α)`;
//! * [`g_closed_alpha2`]: `cosh(√c(π - x)) / (2√c sinh(√c π))`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::line_green::{h_eval, laplace_integral, Kernel, QuadratureConfig, P_MAX};
use crate::mittag_leffler::{ml_eval, ml_eval_detailed, MlRegimeConfig};
use crate::params::{validate, GreenValue, KernelParams, Method};
use crate::quadrature::{insert_break, integrate_breaks, TanhSinh};
use crate::special::{cos_mul, sin_mul, KahanSum};

pub const DEFAULT_TOL: f64 = 1e-8;

/// Number of periodization terms `F_n` evaluated one by one before the closed-form remainder.
pub const PERIODIZED_EXPLICIT_TERMS: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Acceleration {
    None,
    /// One summation-by-parts pass against the Dirichlet kernel.
    AbelPairing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    pub target_abs_tol: f64,
    pub max_terms: u64,
    pub acceleration: Acceleration,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            target_abs_tol: 1e-10,
            max_terms: 1_000_000,
            acceleration: Acceleration::AbelPairing,
        }
    }
}

impl SeriesConfig {
    pub fn with_tol(target_abs_tol: f64) -> Self {
        Self {
            target_abs_tol,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.target_abs_tol > 0.0) {
            return Err(Error::out_of_domain("target_abs_tol", self.target_abs_tol, "(0, inf)"));
        }
        if self.max_terms < 16 {
            return Err(Error::out_of_domain("max_terms", self.max_terms as f64, ">= 16"));
        }
        Ok(())
    }
}

fn divergent_at_zero() -> Error {
    Error::Divergent("G(0) undefined for alpha <= 1".into())
}

fn check_x_closed(params: &KernelParams, x: f64) -> Result<()> {
    if !(x >= 0.0 && x <= PI) {
        return Err(Error::out_of_domain("x", x, "[0, pi]"));
    }
    if x == 0.0 && params.alpha() <= 1.0 {
        return Err(divergent_at_zero());
    }
    Ok(())
}

fn check_x_open(params: &KernelParams, x: f64) -> Result<()> {
    if x == 0.0 && params.alpha() <= 1.0 {
        return Err(divergent_at_zero());
    }
    if !(x > 0.0 && x <= PI) {
        return Err(Error::out_of_domain("x", x, "(0, pi]"));
    }
    Ok(())
}

/// Fourier coefficient `1 / (c + n^α)`.
fn coeff(params: &KernelParams, n: f64) -> f64 {
    1.0 / (params.c() + n.powf(params.alpha()))
}

/// `(1/2π) [1/c + 2 Σ_{n=1}^{N} cos(nx) / (c + n^α)]` for any real `x`.
pub fn series_partial_sum(params: &KernelParams, x: f64, n_terms: u64) -> f64 {
    partial_sum(params, x, n_terms).0
}

/// Returns the partial sum and `Σ a_n` (for the rounding bound).
fn partial_sum(params: &KernelParams, x: f64, n_terms: u64) -> (f64, f64) {
    let mut acc = KahanSum::new();
    let mut abs = 0.0;
    for n in 1..=n_terms {
        let nf = n as f64;
        let a = coeff(params, nf);
        acc.add(a * cos_mul(nf, x));
        abs += a;
    }
    ((1.0 / params.c() + 2.0 * acc.value()) / (2.0 * PI), abs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum TailRule {
    Dirichlet,
    Comparison,
    Abel,
}

/// Smallest `N ≤ cap` with `bound(N) ≤ target`, for a bound whose acceptance is monotone in `N`.
fn smallest_n<F: Fn(u64) -> f64>(bound: F, target: f64, cap: u64) -> Option<u64> {
    if bound(cap) > target {
        return None;
    }
    let mut lo = 0u64;
    let mut hi = 1u64;
    while hi < cap && bound(hi) > target {
        lo = hi;
        hi = (hi * 2).min(cap);
    }
    // bound(lo) > target (or lo == 0), bound(hi) <= target
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if bound(mid) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Number of terms [`g_series`] would sum at `x` for `cfg`.
pub fn series_terms(params: &KernelParams, x: f64, cfg: &SeriesConfig) -> Result<u64> {
    validate(params, Method::Series)?;
    cfg.check()?;
    check_x_closed(params, x)?;
    series_plan(params, x, cfg).map(|(n, _, _)| n)
}

/// Truncation index, tail rule and tail bound.
fn series_plan(params: &KernelParams, x: f64, cfg: &SeriesConfig) -> Result<(u64, TailRule, f64)> {
    let alpha = params.alpha();
    let c = params.c();
    let s = (0.5 * x).sin();
    let target = 0.5 * cfg.target_abs_tol;

    let dirichlet = |n: u64| 1.0 / (PI * s * (c + ((n + 1) as f64).powf(alpha)));
    let comparison = |n: u64| {
        if n == 0 {
            f64::INFINITY
        } else {
            (n as f64).powf(1.0 - alpha) / (PI * (alpha - 1.0))
        }
    };
    // convexity of n ↦ 1/(c+n^α) from N+1 on makes the differences decrease
    let convex_from = |n: f64| n.powf(alpha) * (alpha + 1.0) >= (alpha - 1.0) * c;
    let abel = |n: u64| {
        let m = (n + 1) as f64;
        if !convex_from(m) {
            return f64::INFINITY;
        }
        let diff = coeff(params, m) - coeff(params, m + 1.0);
        (1.0 + 1e-9) * diff / (2.0 * PI * s * s)
    };

    let mut best: Option<(u64, TailRule, f64)> = None;
    let mut consider = |rule: TailRule, n: Option<u64>, bound: &dyn Fn(u64) -> f64| {
        if let Some(n) = n {
            if best.map_or(true, |(bn, _, _)| n < bn) {
                best = Some((n, rule, bound(n)));
            }
        }
    };
    if x > 0.0 {
        consider(TailRule::Dirichlet, smallest_n(dirichlet, target, cfg.max_terms), &dirichlet);
        if cfg.acceleration == Acceleration::AbelPairing {
            consider(TailRule::Abel, smallest_n(abel, target, cfg.max_terms), &abel);
        }
    }
    if alpha > 1.0 {
        consider(TailRule::Comparison, smallest_n(comparison, target, cfg.max_terms), &comparison);
    }
    best.ok_or_else(|| {
        Error::ToleranceUnreachable(format!(
            "series for {params} at x={x} needs more than {} terms for tol {:e}",
            cfg.max_terms, cfg.target_abs_tol
        ))
    })
}

/// `G_{α,c}(x)` from the Fourier series, `α ∈ (0, 4]`, with a rigorous error bound.
///
/// `x ∈ (0, π]`; `x = 0` is allowed for `α > 1`, where the series converges absolutely.
pub fn g_series(params: &KernelParams, x: f64, cfg: &SeriesConfig) -> Result<GreenValue> {
    validate(params, Method::Series)?;
    cfg.check()?;
    check_x_closed(params, x)?;
    let (n_terms, rule, tail) = series_plan(params, x, cfg)?;
    let c = params.c();
    let (mut value, abs_sum) = partial_sum(params, x, n_terms);
    if rule == TailRule::Abel {
        // Σ_{n>N} a_n cos(nx) = -a_{N+1} sin((N+½)x) / (2 sin(x/2)) + remainder
        let a_next = coeff(params, (n_terms + 1) as f64);
        value -= a_next * sin_mul(n_terms as f64 + 0.5, x) / (2.0 * PI * (0.5 * x).sin());
    }
    let rounding = 4.0 * f64::EPSILON * (1.0 / c + 2.0 * abs_sum) / (2.0 * PI) + 2.0 * f64::EPSILON * value.abs();
    Ok(GreenValue::new(value, tail + rounding, Method::Series, true))
}

/// `G_{2,c}(x) = cosh(√c(π-x)) / (2√c sinh(√c π))`, written with decaying exponentials.
pub fn g_closed_alpha2(c: f64, x: f64) -> Result<GreenValue> {
    g_closed_alpha2_deriv(c, x, 0)
}

/// `p`-th derivative of the `α = 2` closed form.
pub fn g_closed_alpha2_deriv(c: f64, x: f64, p: u32) -> Result<GreenValue> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::out_of_domain("c", c, "(0, inf)"));
    }
    if !(x >= 0.0 && x <= PI) {
        return Err(Error::out_of_domain("x", x, "[0, pi]"));
    }
    let k = c.sqrt();
    let lead = (-k * x).exp();
    let reflect = -2.0 * k * (PI - x);
    let pair = if p % 2 == 0 {
        1.0 + reflect.exp()
    } else {
        reflect.exp_m1()
    };
    let value = k.powi(p as i32) * lead * pair / (2.0 * k * -(-2.0 * k * PI).exp_m1());
    Ok(GreenValue::new(
        value,
        8.0 * f64::EPSILON * value.abs(),
        Method::ClosedForm2,
        true,
    ))
}

/// `F_n(x) = H(x + 2nπ) + H(2(n+1)π - x)`.
pub fn periodized_term(params: &KernelParams, x: f64, n: u32, cfg: &QuadratureConfig) -> Result<GreenValue> {
    let shift = 2.0 * PI * n as f64;
    let a = h_eval(params, x + shift, cfg)?;
    let b = h_eval(params, shift + 2.0 * PI - x, cfg)?;
    Ok(GreenValue::new(
        a.value + b.value,
        a.error_bound + b.error_bound,
        a.method,
        a.rigorous && b.rigorous,
    ))
}

/// Periodization of the line kernel with the default split between explicit
/// terms and the closed-form remainder.
pub fn g_periodized(params: &KernelParams, x: f64, tol: f64) -> Result<GreenValue> {
    g_periodized_with(params, x, PERIODIZED_EXPLICIT_TERMS, tol)
}

/// `Σ_{n<M} F_n(x)` from [`h_eval`] plus `Σ_{n≥M} F_n(x)` as one Laplace integral
/// with kernel `e^{-2πMt}(e^{-tx} + e^{-t(2π-x)}) / (1 - e^{-2πt})`.
pub fn g_periodized_with(params: &KernelParams, x: f64, explicit_terms: u32, tol: f64) -> Result<GreenValue> {
    validate(params, Method::Periodized)?;
    check_x_open(params, x)?;
    check_tol(tol)?;
    if params.is_alpha2() {
        // F_n = q^n F_0 with q = e^{-2π√c}; the remainder is an exact geometric tail
        let k = params.c().sqrt();
        let q = (-2.0 * PI * k).exp();
        let f0 = ((-k * x).exp() + (-k * (2.0 * PI - x)).exp()) / (2.0 * k);
        let mut acc = KahanSum::new();
        let mut term = f0;
        let mut n = 0u32;
        while n < explicit_terms.max(1) || term > 0.25 * tol {
            acc.add(term);
            term *= q;
            n += 1;
        }
        acc.add(term / (1.0 - q));
        let value = acc.value();
        return Ok(GreenValue::new(value, 8.0 * f64::EPSILON * value, Method::Periodized, false));
    }
    let per_term = 0.25 * tol / (explicit_terms.max(1) as f64);
    let qcfg = QuadratureConfig::with_tol(per_term);
    let mut value = KahanSum::new();
    let mut err = 0.0;
    for n in 0..explicit_terms {
        let f = periodized_term(params, x, n, &qcfg)?;
        value.add(f.value);
        err += f.error_bound;
    }
    let (rem, rem_err) = laplace_integral(
        params,
        Kernel::Periodic {
            x,
            p: 0,
            skip: explicit_terms,
        },
        &QuadratureConfig::with_tol(0.5 * tol),
    )?;
    value.add(rem);
    err += rem_err;
    Ok(GreenValue::new(value.value(), err, Method::Periodized, false))
}

/// `p`-th derivative of `G` on `(0, π]`, `p ≤ 8`, as the summed periodization
/// `Σ_n F_n^{(p)}` in closed form under the Laplace integral. The sign of the
/// result is `(-1)^p`. `α = 2` uses the closed form.
pub fn g_deriv(params: &KernelParams, x: f64, p: u32, tol: f64) -> Result<GreenValue> {
    if p > P_MAX {
        return Err(Error::out_of_domain("p", p as f64, format!("[0, {P_MAX}]")));
    }
    check_tol(tol)?;
    if params.is_alpha2() {
        return g_closed_alpha2_deriv(params.c(), x, p);
    }
    validate(params, Method::Periodized)?;
    check_x_open(params, x)?;
    let (value, err) = laplace_integral(
        params,
        Kernel::Periodic { x, p, skip: 0 },
        &QuadratureConfig::with_tol(tol),
    )?;
    Ok(GreenValue::new(value, err, Method::Periodized, false))
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::out_of_domain("tol", tol, "(0, inf)"))
    }
}

fn ml_config(tol: f64) -> MlRegimeConfig {
    MlRegimeConfig {
        target_abs_tol: (1e-2 * tol).clamp(1e-14, 1e-10),
        ..MlRegimeConfig::default()
    }
}

/// Breakpoints for integrands that peak near `t ≈ x` and oscillate with the
/// Mittag-Leffler factor for `α > 1`.
fn ml_breaks(x: f64, end: f64) -> Vec<f64> {
    let mut breaks: Vec<f64> = vec![0.0];
    let mut t = 2.0;
    while t < end {
        breaks.push(t);
        t += 2.0;
    }
    breaks.push(end);
    insert_break(&mut breaks, x);
    insert_break(&mut breaks, 0.25 * x);
    insert_break(&mut breaks, 4.0 * x);
    breaks
}

/// Poisson-kernel representation
///
/// ```text
/// G(x) = (1/2π) ∫₀^∞ (1 - e^{-2t}) / (1 - 2 cos x e^{-t} + e^{-2t}) t^{α-1} E_{α,α}(-c t^α) dt.
/// ```
///
/// Integrated up to `T` where the Poisson factor is within `tol` of one; the rest
/// is `∫_T^∞ t^{α-1} E_{α,α}(-c t^α) dt = E_{α,1}(-c T^α) / c`.
pub fn g_ml(params: &KernelParams, x: f64, tol: f64) -> Result<GreenValue> {
    validate(params, Method::MlIntegral)?;
    // the integrand behaves like t^{α-2} at the origin when x = 0
    if x != 0.0 {
        check_x_open(params, x)?;
    } else if params.alpha() <= 1.0 {
        return Err(divergent_at_zero());
    }
    check_tol(tol)?;
    let alpha = params.alpha();
    let c = params.c();
    let ml_cfg = ml_config(tol);
    let sin_half_sq = (0.5 * x).sin().powi(2);
    let end = (200.0 / tol).ln().max(8.0);
    let integrand = |t: f64| -> Result<f64> {
        let q = (-t).exp();
        let one_minus_q = -(-t).exp_m1();
        let e = ml_eval(alpha, alpha, -c * t.powf(alpha), &ml_cfg)?;
        if sin_half_sq == 0.0 {
            // (1+q)/(1-q) ~ 2/t; keep t/(1-q) together so denormal t stays finite
            return Ok((1.0 + q) * (t / one_minus_q) * t.powf(alpha - 2.0) * e);
        }
        let poisson = -(-2.0 * t).exp_m1() / (one_minus_q * one_minus_q + 4.0 * q * sin_half_sq);
        Ok(poisson * t.powf(alpha - 1.0) * e)
    };
    let opts = TanhSinh {
        abs_tol: PI * tol,
        rel_tol: 1e-13,
        min_level: 3,
        max_level: 11,
    };
    let q = integrate_breaks(integrand, &ml_breaks(x, end), &opts)?;
    let tail = ml_eval_detailed(alpha, 1.0, -c * end.powf(alpha), &ml_cfg)?;
    // neglected (P - 1) beyond T: |P - 1| ≤ 2e^{-t}/(1-e^{-t})², weight ≤ survival at T
    let neglect = 4.0 * (-end).exp() * (tail.value.abs() / c + ml_cfg.target_abs_tol * end);
    let value = (q.value + tail.value / c) / (2.0 * PI);
    let ml_err = ml_cfg.target_abs_tol * end.powf(alpha.max(1.0)) + tail.error / c;
    let err = (q.error + ml_err + neglect) / (2.0 * PI);
    Ok(GreenValue::new(value, err, Method::MlIntegral, false))
}

/// `G'(x) = (sin x / π) ∫₀^∞ (e^{-3t} - e^{-t}) / (1 - 2 cos x e^{-t} + e^{-2t})² t^{α-1} E_{α,α}(-c t^α) dt`.
///
/// Exactly zero at `x = π`.
pub fn g_prime_ml(params: &KernelParams, x: f64, tol: f64) -> Result<GreenValue> {
    validate(params, Method::MlIntegral)?;
    check_x_open(params, x)?;
    check_tol(tol)?;
    let sin_x = if x > 0.5 * PI { (PI - x).sin() } else { x.sin() };
    if sin_x == 0.0 {
        return Ok(GreenValue::new(0.0, 0.0, Method::MlIntegral, true));
    }
    let alpha = params.alpha();
    let c = params.c();
    let ml_cfg = ml_config(tol);
    let sin_half_sq = (0.5 * x).sin().powi(2);
    let end = (1e3 / tol).ln().max(10.0);
    let integrand = |t: f64| -> Result<f64> {
        let q = (-t).exp();
        let one_minus_q = -(-t).exp_m1();
        let den = one_minus_q * one_minus_q + 4.0 * q * sin_half_sq;
        let num = q * (-2.0 * t).exp_m1();
        let e = ml_eval(alpha, alpha, -c * t.powf(alpha), &ml_cfg)?;
        Ok(num / (den * den) * t.powf(alpha - 1.0) * e)
    };
    let opts = TanhSinh {
        abs_tol: PI * tol / sin_x,
        rel_tol: 1e-13,
        min_level: 3,
        max_level: 11,
    };
    let q = integrate_breaks(integrand, &ml_breaks(x, end), &opts)?;
    let tail = integrand(end)?.abs();
    let value = sin_x / PI * q.value;
    let err = sin_x / PI * (q.error + tail + ml_cfg.target_abs_tol * end);
    Ok(GreenValue::new(value, err, Method::MlIntegral, false))
}

/// Maps any real `x` into `[0, π]` by evenness and `2π`-periodicity.
pub fn reduce_to_half_period(x: f64) -> f64 {
    let r = x.abs() % (2.0 * PI);
    if r > PI {
        2.0 * PI - r
    } else {
        r
    }
}

/// Dispatcher. Without an explicit method: `α = 2` uses the closed form,
/// `α ∈ (0, 2)` the series with the periodization as fallback when the series
/// would exceed its term cap, and `α ∈ (2, 4]` the series alone.
pub fn g_eval(params: &KernelParams, x: f64, method: Option<Method>, tol: f64) -> Result<GreenValue> {
    if !x.is_finite() {
        return Err(Error::out_of_domain("x", x, "finite reals"));
    }
    check_tol(tol)?;
    let x = reduce_to_half_period(x);
    if x == 0.0 && params.alpha() <= 1.0 {
        return Err(divergent_at_zero());
    }
    match method {
        Some(m) => {
            validate(params, m)?;
            match m {
                Method::Series => g_series(params, x, &SeriesConfig::with_tol(tol)),
                Method::Periodized => g_periodized(params, x, tol),
                Method::MlIntegral => g_ml(params, x, tol),
                Method::ClosedForm2 => g_closed_alpha2(params.c(), x),
                Method::McJtp | Method::McPoisson | Method::LaplaceIntegral => Err(Error::out_of_domain(
                    "method",
                    f64::NAN,
                    "Series, Periodized, MlIntegral or ClosedForm2",
                )),
            }
        }
        None => {
            if params.is_alpha2() {
                return g_closed_alpha2(params.c(), x);
            }
            match g_series(params, x, &SeriesConfig::with_tol(tol)) {
                Err(Error::ToleranceUnreachable(_)) if params.alpha() < 2.0 && x > 0.0 => {
                    g_periodized(params, x, tol)
                }
                Err(Error::ToleranceUnreachable(_)) if params.alpha() < 2.0 => g_ml(params, x, tol),
                other => other,
            }
        }
    }
}
