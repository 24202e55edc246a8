//! Small special-function and floating-point helpers.

use std::f64::consts::PI;

/// Reciprocal Gamma function `1/Γ(s)`. Entire; exactly zero at nonpositive integers.
pub fn rgamma(s: f64) -> f64 {
    if s.is_nan() {
        return f64::NAN;
    }
    if s <= 0.0 && s == s.floor() {
        return 0.0;
    }
    if s > 170.0 {
        return (-libm::lgamma(s)).exp();
    }
    if s < -170.0 {
        // 1/Γ(s) = Γ(1-s) sin(πs) / π
        let (lg, _) = libm::lgamma_r(1.0 - s);
        return sin_pi(s) / PI * lg.exp();
    }
    1.0 / libm::tgamma(s)
}

/// `ln |Γ(s)|`.
pub fn ln_gamma(s: f64) -> f64 {
    libm::lgamma_r(s).0
}

/// `sin(πx)` with exact zeros at integers.
pub fn sin_pi(x: f64) -> f64 {
    if x == x.floor() {
        return 0.0;
    }
    // reduce to (-1, 1]
    let r = x - 2.0 * (x / 2.0).round();
    (PI * r).sin()
}

/// `cos(πx)` with exact zeros at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let shifted = x + 0.5;
    if shifted == shifted.floor() {
        return 0.0;
    }
    let r = x - 2.0 * (x / 2.0).round();
    (PI * r).cos()
}

/// `cos(n·x)` with the product `n·x` carried in double-double, so the phase
/// error does not grow with `n`.
pub fn cos_mul(n: f64, x: f64) -> f64 {
    let hi = n * x;
    let lo = n.mul_add(x, -hi);
    let (s, c) = hi.sin_cos();
    c - s * lo
}

/// `sin(n·x)` with the same compensated phase as [`cos_mul`].
pub fn sin_mul(n: f64, x: f64) -> f64 {
    let hi = n * x;
    let lo = n.mul_add(x, -hi);
    let (s, c) = hi.sin_cos();
    s + c * lo
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Upper incomplete Gamma `Γ(p+1, y)` for integer `p ≥ 0`, via the finite sum
/// `p! e^{-y} Σ_{j≤p} y^j / j!`. For `p = -1` returns the bound `e^{-y}/y ≥ E₁(y)`.
pub(crate) fn upper_gamma_int(p: i32, y: f64) -> f64 {
    if p < 0 {
        return (-y).exp() / y;
    }
    let mut term = 1.0;
    let mut acc = 1.0;
    for j in 1..=p {
        term *= y / j as f64;
        acc += term;
    }
    let fact: f64 = (1..=p).map(|j| j as f64).product();
    fact * (-y).exp() * acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rgamma_values() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!((rgamma(0.5) - 1.0 / PI.sqrt()).abs() < 1e-15);
        assert!((rgamma(5.0) - 1.0 / 24.0).abs() < 1e-16);
        // 1/Γ(-1.5) = 3 / (4 sqrt(pi))
        assert!((rgamma(-1.5) - 3.0 / (4.0 * PI.sqrt())).abs() < 1e-14);
        assert!(rgamma(172.0) > 0.0 && rgamma(172.0) < 1e-300);
    }

    #[test]
    fn rgamma_continuous_through_zeros() {
        for k in 0..6 {
            let s = -(k as f64);
            let near = rgamma(s + 1e-9).abs();
            assert!(near < 1e-6 * (1..=k.max(1)).product::<usize>() as f64);
        }
    }

    #[test]
    fn trig_helpers() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(sin_pi(-2.0), 0.0);
        assert_eq!(cos_pi(0.5), 0.0);
        assert_eq!(cos_pi(1.5), 0.0);
        assert!((sin_pi(0.25) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((cos_pi(0.75) + 0.5f64.sqrt()).abs() < 1e-15);
        assert!((cos_mul(3.0, 0.5) - 1.5f64.cos()).abs() < 1e-15);
        assert!((sin_mul(1e6, 0.3) - (3e5f64).sin()).abs() < 1e-9);
    }

    #[test]
    fn upper_gamma_matches_integer_cases() {
        // Γ(1, y) = e^{-y}
        assert!((upper_gamma_int(0, 2.0) - (-2.0f64).exp()).abs() < 1e-16);
        // Γ(3, 0) = 2
        assert!((upper_gamma_int(2, 0.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn kahan_recovers_small_terms() {
        let mut s = KahanSum::new();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-13).abs() < 1e-20);
    }
}
