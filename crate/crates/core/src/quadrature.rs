//! Double-exponential (tanh-sinh) quadrature on finite intervals.
//!
//! Abscissae are generated from their distance to the nearest endpoint, so
//! integrable endpoint singularities such as `t^{a-1}` near `t = 0` are
//! sampled without cancellation. The error estimate is the difference between
//! successive step halvings plus a rounding floor; it is an estimate, not a bound.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Largest `|t|` in the transformed variable; beyond it the nodes collide with
/// the endpoints in double precision.
const T_MAX: f64 = 6.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TanhSinh {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub min_level: u32,
    pub max_level: u32,
}

impl Default for TanhSinh {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            min_level: 3,
            max_level: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

impl QuadResult {
    fn accumulate(&mut self, other: QuadResult) {
        self.value += other.value;
        self.error += other.error;
        self.evaluations += other.evaluations;
    }
}

struct Node {
    /// Distance from the nearest endpoint, in units of the half-width.
    delta: f64,
    weight: f64,
}

fn node(t: f64) -> Node {
    let v = FRAC_PI_2 * t.abs().sinh();
    let e = (-2.0 * v).exp();
    let delta = 2.0 * e / (1.0 + e);
    let weight = FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
    Node { delta, weight }
}

/// Integrates a fallible integrand over `[a, b]`.
pub fn tanh_sinh_try<F>(mut f: F, a: f64, b: f64, opts: &TanhSinh) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NumericalInstability(format!(
            "non-finite integration limits [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(QuadResult::default());
    }
    if b < a {
        let mut r = tanh_sinh_try(f, b, a, opts)?;
        r.value = -r.value;
        return Ok(r);
    }
    let half = 0.5 * (b - a);
    let mid = a + half;
    let mut evaluations = 0usize;

    // Accumulated Σ w f and Σ |w f| over all nodes generated so far.
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut eval_pair = |t: f64, sum: &mut f64, abs_sum: &mut f64| -> Result<()> {
        if t == 0.0 {
            let y = f(mid)?;
            check(y, mid)?;
            *sum += FRAC_PI_2 * y;
            *abs_sum += FRAC_PI_2 * y.abs();
            evaluations += 1;
            return Ok(());
        }
        let n = node(t);
        let d = half * n.delta;
        for x in [a + d, b - d] {
            if x <= a || x >= b {
                continue;
            }
            let y = f(x)?;
            check(y, x)?;
            *sum += n.weight * y;
            *abs_sum += n.weight * y.abs();
            evaluations += 1;
        }
        Ok(())
    };

    let mut h = 1.0;
    let steps = (T_MAX / h) as i64;
    for j in 0..=steps {
        eval_pair(j as f64 * h, &mut sum, &mut abs_sum)?;
    }
    let mut prev = half * h * sum;
    let mut prev_diff = f64::INFINITY;
    for level in 1..=opts.max_level {
        h *= 0.5;
        let steps = (T_MAX / h) as i64;
        let mut j = 1;
        while j <= steps {
            eval_pair(j as f64 * h, &mut sum, &mut abs_sum)?;
            j += 2;
        }
        let cur = half * h * sum;
        let diff = (cur - prev).abs();
        let floor = 16.0 * f64::EPSILON * half * h * abs_sum;
        let err = diff.min(prev_diff).max(floor);
        let target = opts.abs_tol.max(opts.rel_tol * cur.abs());
        if level >= opts.min_level && (diff <= target || diff <= floor) {
            return Ok(QuadResult {
                value: cur,
                error: err.max(floor),
                evaluations,
            });
        }
        prev_diff = diff;
        prev = cur;
    }
    Err(Error::NumericalInstability(format!(
        "tanh-sinh on [{a}, {b}] did not reach tolerance after {} levels (last change {prev_diff:.3e})",
        opts.max_level
    )))
}

fn check(y: f64, x: f64) -> Result<()> {
    if y.is_finite() {
        Ok(())
    } else {
        Err(Error::NumericalInstability(format!(
            "integrand is not finite at {x:e}"
        )))
    }
}

/// Integrates an infallible integrand over `[a, b]`.
pub fn tanh_sinh<F>(mut f: F, a: f64, b: f64, opts: &TanhSinh) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    tanh_sinh_try(|x| Ok(f(x)), a, b, opts)
}

/// Integrates over consecutive segments `[b₀, b₁], [b₁, b₂], …`, splitting the
/// absolute tolerance evenly. Breakpoints must be nondecreasing.
pub fn integrate_breaks<F>(mut f: F, breaks: &[f64], opts: &TanhSinh) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let segments = breaks.len().saturating_sub(1).max(1);
    let seg_opts = TanhSinh {
        abs_tol: opts.abs_tol / segments as f64,
        ..*opts
    };
    let mut total = QuadResult::default();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            total.accumulate(tanh_sinh_try(&mut f, w[0], w[1], &seg_opts)?);
        }
    }
    Ok(total)
}

/// Breakpoints `[0, s, s·r, s·r², …, end]` with geometric growth `r` beyond `s`,
/// so that integrands decaying over many scales get one segment per scale.
pub fn geometric_breaks(split: f64, end: f64, ratio: f64) -> Vec<f64> {
    let mut breaks = vec![0.0];
    if split > 0.0 && split < end {
        breaks.push(split);
        let mut next = split * ratio;
        while next < end {
            breaks.push(next);
            next *= ratio;
        }
    }
    breaks.push(end);
    breaks
}

/// Inserts an extra breakpoint into a sorted list when it falls strictly inside.
pub fn insert_break(breaks: &mut Vec<f64>, point: f64) {
    let first = breaks[0];
    let last = *breaks.last().unwrap_or(&first);
    if !(point > first && point < last) {
        return;
    }
    if breaks.iter().any(|&b| (b - point).abs() <= 1e-12 * point.abs()) {
        return;
    }
    let pos = breaks.partition_point(|&b| b < point);
    breaks.insert(pos, point);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn opts() -> TanhSinh {
        TanhSinh {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            ..TanhSinh::default()
        }
    }

    #[test]
    fn polynomial_and_exponential() {
        let r = tanh_sinh(|x| x * x, 0.0, 3.0, &opts()).unwrap();
        assert!((r.value - 9.0).abs() < 1e-13);
        let r = tanh_sinh(|x| (-x).exp(), 0.0, 40.0, &opts()).unwrap();
        assert!((r.value - (1.0 - (-40.0f64).exp())).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 x^{-0.9} dx = 10
        let r = tanh_sinh(|x| x.powf(-0.9), 0.0, 1.0, &opts()).unwrap();
        assert!((r.value - 10.0).abs() < 1e-9, "{}", r.value);
        // ∫_0^1 ln(x) dx = -1
        let r = tanh_sinh(|x| x.ln(), 0.0, 1.0, &opts()).unwrap();
        assert!((r.value + 1.0).abs() < 1e-13);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let r = tanh_sinh(|x| x.sin(), PI, 0.0, &opts()).unwrap();
        assert!((r.value + 2.0).abs() < 1e-13);
    }

    #[test]
    fn errors_propagate() {
        let r = tanh_sinh_try(
            |x| {
                if x > 0.5 {
                    Err(Error::NumericalInstability("boom".into()))
                } else {
                    Ok(1.0)
                }
            },
            0.0,
            1.0,
            &opts(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn breaks_helpers() {
        let b = geometric_breaks(1.0, 100.0, 4.0);
        assert_eq!(b, vec![0.0, 1.0, 4.0, 16.0, 64.0, 100.0]);
        let mut b2 = b.clone();
        insert_break(&mut b2, 10.0);
        assert_eq!(b2, vec![0.0, 1.0, 4.0, 10.0, 16.0, 64.0, 100.0]);
        insert_break(&mut b2, 200.0);
        assert_eq!(b2.len(), 7);
        let r = integrate_breaks(|x| Ok((-x).exp()), &b2, &opts()).unwrap();
        assert!((r.value - (1.0 - (-100.0f64).exp())).abs() < 1e-13);
    }
}
