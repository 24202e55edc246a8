//! Samplers for positive stable subordinators and the killed-time laws built on
//! them, and Monte Carlo estimators of `G`.
//!
//! Every estimator splits its samples into fixed-size chunks, chunk `i` drawing
//! from stream `i` of the seed. Chunk statistics are merged in chunk order, so an
//! estimate depends only on `(seed, n_samples, chunk_size)` and not on the
//! number of worker threads.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, Open01};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::KernelParams;

/// Below this `X` the theta function is summed in its Poisson-transformed form.
pub const THETA_SWITCH: f64 = 0.25;

/// An independent random stream identified by `(seed, stream_id)`.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform on the open interval `(0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.sample(Open01)
    }

    /// Standard exponential.
    pub fn exponential(&mut self) -> f64 {
        self.rng.sample(Exp1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// Whether `value` lies within `k` standard errors of the mean.
    pub fn brackets(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_error
    }
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    pub fn push(&mut self, v: f64) {
        self.n += 1;
        let d = v - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (v - self.mean);
    }

    /// Pooled statistics of two disjoint batches.
    pub fn merge(&mut self, other: &Welford) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let w = other.n as f64 / n as f64;
        self.mean += d * w;
        self.m2 += other.m2 + d * d * self.n as f64 * w;
        self.n = n;
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    pub fn estimate(&self, seed: u64) -> McEstimate {
        McEstimate {
            mean: self.mean,
            std_error: (self.variance() / self.n as f64).sqrt(),
            n_samples: self.n,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub seed: u64,
    pub chunk_size: u64,
    pub parallel: bool,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            chunk_size: 4096,
            parallel: true,
        }
    }
}

impl McConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// Mean of `f` over `n_samples` draws, chunked onto streams `0, 1, 2, ...`.
pub fn mc_mean<F>(n_samples: u64, cfg: &McConfig, f: F) -> Result<McEstimate>
where
    F: Fn(&mut RngStream) -> f64 + Sync,
{
    if n_samples < 2 {
        return Err(Error::out_of_domain("n_samples", n_samples as f64, ">= 2"));
    }
    if cfg.chunk_size == 0 {
        return Err(Error::out_of_domain("chunk_size", 0.0, ">= 1"));
    }
    let chunks = n_samples.div_ceil(cfg.chunk_size);
    let run = |i: u64| -> Welford {
        let mut rng = RngStream::new(cfg.seed, i);
        let len = cfg.chunk_size.min(n_samples - i * cfg.chunk_size);
        let mut w = Welford::default();
        for _ in 0..len {
            w.push(f(&mut rng));
        }
        w
    };
    let parts: Vec<Welford> = if cfg.parallel {
        (0..chunks).into_par_iter().map(run).collect()
    } else {
        (0..chunks).map(run).collect()
    };
    let mut total = Welford::default();
    for p in &parts {
        total.merge(p);
    }
    if !total.mean().is_finite() {
        return Err(Error::NumericalInstability("Monte Carlo mean is not finite".into()));
    }
    Ok(total.estimate(cfg.seed))
}

/// `ln σ^{(β)}_1` by Kanter's representation, `β ∈ (0, 1)`.
fn ln_unit_stable(beta: f64, rng: &mut RngStream) -> f64 {
    let u = rng.uniform();
    let e = rng.exponential();
    let a = (beta * PI * u).sin().ln();
    let b = (PI * u).sin().ln();
    let c = ((1.0 - beta) * PI * u).sin().ln();
    a - b / beta + (1.0 - beta) / beta * (c - e.ln())
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta <= 1.0 {
        Ok(())
    } else {
        Err(Error::out_of_domain("beta", beta, "(0, 1]"))
    }
}

/// One draw of `σ^{(β)}_t`, with `E e^{-λσ} = e^{-tλ^β}`.
pub fn sample_stable_subordinator(beta: f64, t: f64, rng: &mut RngStream) -> Result<f64> {
    check_beta(beta)?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::out_of_domain("t", t, "(0, inf)"));
    }
    Ok(subordinate(beta, t, rng))
}

/// `σ^{(β)}_t = t^{1/β} σ^{(β)}_1`, in log-space.
fn subordinate(beta: f64, t: f64, rng: &mut RngStream) -> f64 {
    if beta == 1.0 {
        return t;
    }
    (t.ln() / beta + ln_unit_stable(beta, rng)).exp()
}

/// `X_{α,c} = σ^{(α/2)}` at an independent exponential time of rate `c`.
pub fn sample_x(params: &KernelParams, rng: &mut RngStream) -> Result<f64> {
    if params.alpha() > 2.0 {
        return Err(Error::out_of_domain("alpha", params.alpha(), "(0, 2]"));
    }
    Ok(draw_x(params, rng))
}

fn draw_x(params: &KernelParams, rng: &mut RngStream) -> f64 {
    let tau = rng.exponential() / params.c();
    subordinate(params.beta(), tau, rng)
}

/// `Y_{α,c} = σ^{(α)}` at an independent exponential time of rate `c`, `α ≤ 1`.
pub fn sample_y(params: &KernelParams, rng: &mut RngStream) -> Result<f64> {
    if params.alpha() > 1.0 {
        return Err(Error::out_of_domain("alpha", params.alpha(), "(0, 1]"));
    }
    Ok(draw_y(params, rng))
}

fn draw_y(params: &KernelParams, rng: &mut RngStream) -> f64 {
    let tau = rng.exponential() / params.c();
    subordinate(params.alpha(), tau, rng)
}

/// `X_α = (S / S')^{1/2}` for independent unit `(α/2)`-stable draws, `α ∈ (0, 2)`.
pub fn sample_x_alpha(alpha: f64, rng: &mut RngStream) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::out_of_domain("alpha", alpha, "(0, 2)"));
    }
    let beta = 0.5 * alpha;
    let a = ln_unit_stable(beta, rng);
    let b = ln_unit_stable(beta, rng);
    Ok((0.5 * (a - b)).exp())
}

/// `θ(X, x) = Σ_{n∈Z} e^{-n²X} cos(nx)`, positive for `X > 0` (it may underflow
/// to zero for tiny `X`; [`jtp_ln_theta`] does not).
pub fn jtp_theta(big_x: f64, x: f64) -> f64 {
    jtp_ln_theta(big_x, x).exp()
}

/// `ln θ(X, x)` for `x ∈ [0, π]`.
///
/// For `X ≥ THETA_SWITCH` the triple product
/// `Π_{m≥1} (1 - e^{-2mX})(1 + 2cos x e^{-(2m-1)X} + e^{-(4m-2)X})`,
/// below it `√(π/X) Σ_k e^{-(x - 2πk)²/(4X)}`.
pub fn jtp_ln_theta(big_x: f64, x: f64) -> f64 {
    if big_x >= THETA_SWITCH {
        ln_jtp_product(big_x, x)
    } else {
        ln_theta_transformed(big_x, x)
    }
}

/// The triple product form on its own, for any `X > 0`; capped at `10^6` factors.
pub fn jtp_product(big_x: f64, x: f64) -> f64 {
    ln_jtp_product(big_x, x).exp()
}

fn ln_jtp_product(big_x: f64, x: f64) -> f64 {
    let cos_half_sq = (0.5 * x).cos().powi(2);
    let mut ln = 0.0;
    for m in 1..=1_000_000u32 {
        let odd = (2 * m - 1) as f64 * big_x;
        let q = (-odd).exp();
        if q < 1e-17 {
            break;
        }
        let one_minus = -(-odd).exp_m1();
        // 1 + 2cos x q + q² = (1-q)² + 4q cos²(x/2)
        ln += (one_minus * one_minus + 4.0 * q * cos_half_sq).ln();
        ln += (-(-2.0 * m as f64 * big_x).exp_m1()).ln();
    }
    ln
}

/// The Poisson-summed form on its own, for any `X > 0` and `x ∈ [0, π]`.
pub fn theta_transformed(big_x: f64, x: f64) -> f64 {
    ln_theta_transformed(big_x, x).exp()
}

fn ln_theta_transformed(big_x: f64, x: f64) -> f64 {
    // the k = 0 image is the nearest one for x ∈ [0, π]; factor it out
    let reach = (3200.0 * big_x).sqrt() + x;
    let k_max = (reach / (2.0 * PI)).ceil() as i64 + 1;
    let lead = x * x / (4.0 * big_x);
    let mut s = 0.0;
    for k in -k_max..=k_max {
        let d = x - 2.0 * PI * k as f64;
        s += (lead - d * d / (4.0 * big_x)).exp();
    }
    0.5 * (PI / big_x).ln() - lead + s.ln()
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x <= PI {
        Ok(())
    } else {
        Err(Error::out_of_domain("x", x, "(0, pi]"))
    }
}

fn check_samples(n: u64) -> Result<()> {
    if n >= 100 {
        Ok(())
    } else {
        Err(Error::out_of_domain("n_samples", n as f64, ">= 100"))
    }
}

/// `G(x) = E[θ(X_{α,c}, x)] / (2πc)`, `α ∈ (0, 2]`.
pub fn mc_g_jtp(params: &KernelParams, x: f64, n_samples: u64, cfg: &McConfig) -> Result<McEstimate> {
    if params.alpha() > 2.0 {
        return Err(Error::out_of_domain("alpha", params.alpha(), "(0, 2]"));
    }
    check_x(x)?;
    check_samples(n_samples)?;
    let scale = 1.0 / (2.0 * PI * params.c());
    mc_mean(n_samples, cfg, |rng| {
        let ln_theta = jtp_ln_theta(draw_x(params, rng), x);
        debug_assert!(ln_theta.is_finite());
        scale * ln_theta.exp()
    })
}

/// `(1 - e^{-2y}) / (1 - 2cos x e^{-y} + e^{-2y})`.
pub fn poisson_kernel(y: f64, x: f64) -> f64 {
    let q = (-y).exp();
    let one_minus = -(-y).exp_m1();
    let den = one_minus * one_minus + 4.0 * q * (0.5 * x).sin().powi(2);
    -(-2.0 * y).exp_m1() / den
}

/// `G(x) = E[P(Y_{α,c}, x)] / (2πc)` with the Poisson kernel `P`, `α ∈ (0, 1]`.
pub fn mc_g_poisson(params: &KernelParams, x: f64, n_samples: u64, cfg: &McConfig) -> Result<McEstimate> {
    if params.alpha() > 1.0 {
        return Err(Error::out_of_domain("alpha", params.alpha(), "(0, 1]"));
    }
    check_x(x)?;
    check_samples(n_samples)?;
    let scale = 1.0 / (2.0 * PI * params.c());
    mc_mean(n_samples, cfg, |rng| scale * poisson_kernel(draw_y(params, rng), x))
}

/// Estimate of `E e^{-n² X_{α,c}}`, which equals `c / (c + n^α)`.
pub fn mc_laplace_x(params: &KernelParams, n: u32, n_samples: u64, cfg: &McConfig) -> Result<McEstimate> {
    if params.alpha() > 2.0 {
        return Err(Error::out_of_domain("alpha", params.alpha(), "(0, 2]"));
    }
    let lambda = (n as f64) * (n as f64);
    mc_mean(n_samples, cfg, |rng| (-lambda * draw_x(params, rng)).exp())
}

/// Estimate of `E e^{-n Y_{α,c}}`, which equals `c / (c + n^α)`.
pub fn mc_laplace_y(params: &KernelParams, n: u32, n_samples: u64, cfg: &McConfig) -> Result<McEstimate> {
    if params.alpha() > 1.0 {
        return Err(Error::out_of_domain("alpha", params.alpha(), "(0, 1]"));
    }
    let lambda = n as f64;
    mc_mean(n_samples, cfg, |rng| (-lambda * draw_y(params, rng)).exp())
}

/// `c / (c + n^α)`.
pub fn laplace_target(params: &KernelParams, n: u32) -> f64 {
    params.c() / (params.c() + (n as f64).powf(params.alpha()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn welford_merge_matches_single_pass() {
        let data: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1).collect();
        let mut one = Welford::default();
        data.iter().for_each(|&v| one.push(v));
        let mut a = Welford::default();
        let mut b = Welford::default();
        data[..333].iter().for_each(|&v| a.push(v));
        data[333..].iter().for_each(|&v| b.push(v));
        a.merge(&b);
        assert_eq!(a.count(), 1000);
        assert!((a.mean() - one.mean()).abs() < 1e-12);
        assert!((a.variance() - one.variance()).abs() < 1e-10);
    }

    #[test]
    fn degenerate_subordinator() {
        let mut rng = RngStream::new(1, 0);
        assert_eq!(sample_stable_subordinator(1.0, 3.7, &mut rng).unwrap(), 3.7);
        assert!(sample_stable_subordinator(1.5, 1.0, &mut rng).is_err());
    }

    #[test]
    fn y_rejects_large_alpha() {
        let mut rng = RngStream::new(1, 0);
        let p = KernelParams::new(1.5, 1.0).unwrap();
        assert!(matches!(sample_y(&p, &mut rng), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn theta_large_x_limit() {
        assert!((jtp_theta(60.0, 1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn streams_differ() {
        let mut a = RngStream::new(7, 0);
        let mut b = RngStream::new(7, 1);
        assert_ne!(a.uniform(), b.uniform());
    }
}
