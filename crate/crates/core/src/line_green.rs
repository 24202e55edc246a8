//! Green function `H_{α,c}` of `c + (-Δ)^{α/2}` on the real line.
//!
//! For `α ∈ (0, 2)` it is the Laplace transform of a positive weight:
//!
//! ```text
//! H(x) = (sin θ / π) ∫₀^∞ e^{-tx} t^α / ((t^α + c cos θ)² + c² sin² θ) dt,   θ = πα/2.
//! ```
//!
//! As `α → 2` the denominator develops a spike of width `~ c sin θ` at
//! `t* = c^{1/α}` while the prefactor vanishes, so the integral is split there.
//! Beyond the last breakpoint `T` the remainder is bounded analytically through
//! `t^α / D(t) ≤ T^α / (T^α - c)²` and an incomplete Gamma integral.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{validate, GreenValue, KernelParams, Method};
use crate::quadrature::{geometric_breaks, insert_break, integrate_breaks, TanhSinh};
use crate::special::{cos_pi, sin_pi, upper_gamma_int};

/// Highest derivative order accepted by the derivative evaluators.
pub const P_MAX: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SplitPolicy {
    /// Split at `t* = c^{1/α}`, the near-minimum of the denominator.
    AtPeak,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    /// Maximum number of step halvings per segment.
    pub max_subdivisions: u32,
    pub split_point_policy: SplitPolicy,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_subdivisions: 12,
            split_point_policy: SplitPolicy::AtPeak,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::out_of_domain("abs_tol", self.abs_tol, "(0, inf)"));
        }
        if self.max_subdivisions < 8 {
            return Err(Error::out_of_domain(
                "max_subdivisions",
                self.max_subdivisions as f64,
                ">= 8",
            ));
        }
        if let SplitPolicy::Fixed(s) = self.split_point_policy {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::out_of_domain("split point", s, "(0, inf)"));
            }
        }
        Ok(())
    }
}

/// The `x`-dependent factor multiplying `t^α / D(t)` under the integral.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Kernel {
    /// `t^p e^{-tx}`; `p = -1` gives the antiderivative kernel.
    Line { x: f64, p: i32 },
    /// `d^p/dx^p Σ_{n ≥ skip} [e^{-t(x+2nπ)} + e^{-t(2(n+1)π-x)}]`, summed in closed form.
    Periodic { x: f64, p: u32, skip: u32 },
}

impl Kernel {
    fn power(&self) -> i32 {
        match *self {
            Kernel::Line { p, .. } => p,
            Kernel::Periodic { p, .. } => p as i32,
        }
    }

    /// Exponential decay rate of the kernel.
    fn decay(&self) -> f64 {
        match *self {
            Kernel::Line { x, .. } => x,
            Kernel::Periodic { x, skip, .. } => x + 2.0 * PI * skip as f64,
        }
    }

    /// Powers of `t` folded into [`Kernel::eval`] so that `t / (1 - e^{-2πt})` stays finite near zero.
    fn folded_power(&self) -> f64 {
        match *self {
            Kernel::Line { .. } => 0.0,
            Kernel::Periodic { .. } => 1.0,
        }
    }

    /// Kernel value without the `t^p` factor, times `t^{folded_power}`.
    fn eval(&self, t: f64) -> f64 {
        match *self {
            Kernel::Line { x, .. } => (-t * x).exp(),
            Kernel::Periodic { x, p, skip } => {
                let lead = (-t * (x + 2.0 * PI * skip as f64)).exp();
                let reflect = 2.0 * t * (PI - x);
                let pair = if p % 2 == 0 {
                    1.0 + (-reflect).exp()
                } else {
                    // e^{-2t(π-x)} - 1, accurate as x → π
                    (-reflect).exp_m1()
                };
                lead * pair * (t / -(-2.0 * PI * t).exp_m1())
            }
        }
    }

    /// `sup_{t ≥ T} |eval(t)| e^{λt}` for the tail bound.
    fn envelope(&self, t_end: f64) -> f64 {
        match *self {
            Kernel::Line { .. } => 1.0,
            Kernel::Periodic { .. } => 2.0 / -(-2.0 * PI * t_end).exp_m1(),
        }
    }
}

/// `(sin θ / π) ∫₀^∞ t^{α+p} K(t) / D(t) dt`, returned as `(value, error)`.
pub(crate) fn laplace_integral(
    params: &KernelParams,
    kernel: Kernel,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    cfg.check()?;
    let alpha = params.alpha();
    let c = params.c();
    let sin_t = sin_pi(alpha / 2.0);
    let cos_t = cos_pi(alpha / 2.0);
    let pref = sin_t / PI;
    let p = kernel.power();
    let weight_power = alpha + p as f64;
    let lambda = kernel.decay();
    if !(lambda > 0.0) {
        return Err(Error::out_of_domain("x", lambda, "(0, inf)"));
    }
    let peak = c.powf(1.0 / alpha);
    let split = match cfg.split_point_policy {
        SplitPolicy::AtPeak => peak,
        SplitPolicy::Fixed(s) => s,
    };
    let tail_bound = |t_end: f64| -> f64 {
        let ta = t_end.powf(alpha);
        if ta <= c {
            return f64::INFINITY;
        }
        let ratio = ta / ((ta - c) * (ta - c));
        let incomplete = upper_gamma_int(p, lambda * t_end) / lambda.powi(p + 1);
        pref * ratio * kernel.envelope(t_end) * incomplete
    };
    let base = split.max(peak);
    let mut span = 40.0;
    let mut t_end = base + span / lambda;
    while tail_bound(t_end) > 0.25 * cfg.abs_tol {
        span += 20.0;
        if span > 4000.0 {
            return Err(Error::ToleranceUnreachable(format!(
                "tail of the Laplace integral for {params} cannot be bounded below {:e}",
                cfg.abs_tol
            )));
        }
        t_end = base + span / lambda;
    }
    let mut breaks = geometric_breaks(split, t_end, 4.0);
    if weight_power > 0.0 {
        insert_break(&mut breaks, weight_power / lambda);
    }
    if split != peak {
        insert_break(&mut breaks, peak);
    }
    let opts = TanhSinh {
        abs_tol: 0.5 * cfg.abs_tol / pref,
        rel_tol: 1e-13,
        min_level: 3,
        max_level: cfg.max_subdivisions,
    };
    let integrand = |t: f64| -> Result<f64> {
        let ta = t.powf(alpha);
        let re = ta + c * cos_t;
        let im = c * sin_t;
        let den = re * re + im * im;
        Ok(t.powf(weight_power - kernel.folded_power()) * kernel.eval(t) / den)
    };
    let q = integrate_breaks(integrand, &breaks, &opts)?;
    Ok((pref * q.value, pref * q.error + tail_bound(t_end)))
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::out_of_domain("x", x, "(0, inf)"))
    }
}

/// `H_{α,c}(x)` for `x > 0`; `α = 2` is dispatched to [`h_closed_alpha2`].
pub fn h_eval(params: &KernelParams, x: f64, cfg: &QuadratureConfig) -> Result<GreenValue> {
    check_x(x)?;
    if params.is_alpha2() {
        return h_closed_alpha2(params.c(), x);
    }
    validate(params, Method::LaplaceIntegral)?;
    let (value, err) = laplace_integral(params, Kernel::Line { x, p: 0 }, cfg)?;
    Ok(GreenValue::new(value, err, Method::LaplaceIntegral, false))
}

/// `H_{2,c}(x) = e^{-√c x} / (2√c)`.
pub fn h_closed_alpha2(c: f64, x: f64) -> Result<GreenValue> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::out_of_domain("c", c, "(0, inf)"));
    }
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::out_of_domain("x", x, "[0, inf)"));
    }
    let k = c.sqrt();
    let value = (-k * x).exp() / (2.0 * k);
    Ok(GreenValue::new(value, 2.0 * f64::EPSILON * value, Method::ClosedForm2, true))
}

/// `p`-th derivative of `H_{α,c}` at `x > 0`; its sign is `(-1)^p`.
pub fn h_deriv(params: &KernelParams, x: f64, p: u32, cfg: &QuadratureConfig) -> Result<GreenValue> {
    check_x(x)?;
    if p > P_MAX {
        return Err(Error::out_of_domain("p", p as f64, format!("[0, {P_MAX}]")));
    }
    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    if params.is_alpha2() {
        let k = params.c().sqrt();
        let value = sign * k.powi(p as i32) * (-k * x).exp() / (2.0 * k);
        return Ok(GreenValue::new(
            value,
            4.0 * f64::EPSILON * value.abs(),
            Method::ClosedForm2,
            true,
        ));
    }
    validate(params, Method::LaplaceIntegral)?;
    let (value, err) = laplace_integral(params, Kernel::Line { x, p: p as i32 }, cfg)?;
    Ok(GreenValue::new(sign * value, err, Method::LaplaceIntegral, false))
}

/// `∫_y^∞ H_{α,c}(s) ds`; `c` times this is the upper tail of the law with density `c H`.
pub fn h_survival(params: &KernelParams, y: f64, cfg: &QuadratureConfig) -> Result<GreenValue> {
    check_x(y)?;
    if params.is_alpha2() {
        let c = params.c();
        let value = (-c.sqrt() * y).exp() / (2.0 * c);
        return Ok(GreenValue::new(value, 2.0 * f64::EPSILON * value, Method::ClosedForm2, true));
    }
    validate(params, Method::LaplaceIntegral)?;
    let (value, err) = laplace_integral(params, Kernel::Line { x: y, p: -1 }, cfg)?;
    Ok(GreenValue::new(value, err, Method::LaplaceIntegral, false))
}

/// Law of the positive factor `X_α` in `c H_{α,c} = density of c^{-1/α} E × X_α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XAlphaLaw {
    alpha: f64,
}

impl XAlphaLaw {
    /// `α ∈ (0, 2]`; at `α = 2` the law is the point mass at 1.
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 2.0 {
            Ok(Self { alpha })
        } else {
            Err(Error::out_of_domain("alpha", alpha, "(0, 2]"))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn is_dirac(&self) -> bool {
        self.alpha == 2.0
    }
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && !t.is_nan() {
        Ok(())
    } else {
        Err(Error::out_of_domain("t", t, "(0, inf)"))
    }
}

/// `(2 sin θ / π) t^{α-1} / (1 + 2 cos θ t^α + t^{2α})`, `θ = πα/2`.
pub fn x_alpha_density(law: &XAlphaLaw, t: f64) -> Result<f64> {
    check_t(t)?;
    if law.is_dirac() {
        return Err(Error::out_of_domain(
            "alpha",
            law.alpha,
            "(0, 2) (alpha = 2 is a point mass)",
        ));
    }
    let a = law.alpha;
    let ta = t.powf(a);
    let cos_t = cos_pi(a / 2.0);
    let sin_t = sin_pi(a / 2.0);
    let den = (ta + cos_t) * (ta + cos_t) + sin_t * sin_t;
    Ok(2.0 * sin_t / PI * t.powf(a - 1.0) / den)
}

/// `(2/(πα)) [arctan((t^α + cos θ)/sin θ) - (π/2 - θ)]`.
pub fn x_alpha_cdf(law: &XAlphaLaw, t: f64) -> Result<f64> {
    check_t(t)?;
    let a = law.alpha;
    if law.is_dirac() {
        return Ok(if t >= 1.0 { 1.0 } else { 0.0 });
    }
    if t.is_infinite() {
        return Ok(1.0);
    }
    let theta = PI * a / 2.0;
    let ta = t.powf(a);
    let arg = (ta + cos_pi(a / 2.0)) / sin_pi(a / 2.0);
    Ok((2.0 / (PI * a) * (arg.atan() - (PI / 2.0 - theta))).clamp(0.0, 1.0))
}
