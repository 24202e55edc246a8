//! Parameter types, method tags and the validity table.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stability index `alpha` and killing rate `c` of the operator `c + (-Δ)^{α/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    alpha: f64,
    c: f64,
}

impl KernelParams {
    /// Accepts `alpha ∈ (0, 4]` and `c > 0`; per-method ranges are checked by [`validate`].
    pub fn new(alpha: f64, c: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha <= 4.0) {
            return Err(Error::out_of_domain("alpha", alpha, "(0, 4]"));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::out_of_domain("c", c, "(0, inf)"));
        }
        Ok(Self { alpha, c })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Index of the subordinator driving the Jacobi triple product route, `alpha / 2`.
    pub fn beta(&self) -> f64 {
        self.alpha / 2.0
    }

    /// `alpha / 4`, the subordinator index attached to the `alpha ∈ (2, 4]` regime.
    /// Descriptive only; no evaluator uses it.
    pub fn gamma(&self) -> f64 {
        self.alpha / 4.0
    }

    /// Exact `alpha == 2` branch (Brownian case with closed forms).
    pub fn is_alpha2(&self) -> bool {
        self.alpha == 2.0
    }
}

impl fmt::Display for KernelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha={}, c={})", self.alpha, self.c)
    }
}

/// Evaluation route tag carried by every [`GreenValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    Series,
    Periodized,
    MlIntegral,
    ClosedForm2,
    McJtp,
    McPoisson,
    /// Laplace-type integral for the line kernel `H`.
    LaplaceIntegral,
}

impl Method {
    pub const DETERMINISTIC: [Method; 4] = [
        Method::Series,
        Method::Periodized,
        Method::MlIntegral,
        Method::ClosedForm2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Series => "Series",
            Method::Periodized => "Periodized",
            Method::MlIntegral => "MlIntegral",
            Method::ClosedForm2 => "ClosedForm2",
            Method::McJtp => "McJtp",
            Method::McPoisson => "McPoisson",
            Method::LaplaceIntegral => "LaplaceIntegral",
        }
    }

    /// Human-readable alpha range accepted by the method.
    pub fn alpha_range(&self) -> &'static str {
        match self {
            Method::Series => "(0, 4]",
            Method::Periodized | Method::MlIntegral | Method::McJtp => "(0, 2]",
            Method::McPoisson => "(0, 1]",
            Method::ClosedForm2 => "{2}",
            Method::LaplaceIntegral => "(0, 2)",
        }
    }

    fn accepts(&self, alpha: f64) -> bool {
        match self {
            Method::Series => alpha > 0.0 && alpha <= 4.0,
            Method::Periodized | Method::MlIntegral | Method::McJtp => alpha > 0.0 && alpha <= 2.0,
            Method::McPoisson => alpha > 0.0 && alpha <= 1.0,
            Method::ClosedForm2 => alpha == 2.0,
            Method::LaplaceIntegral => alpha > 0.0 && alpha < 2.0,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "series" => Ok(Method::Series),
            "periodized" => Ok(Method::Periodized),
            "ml" | "mlintegral" => Ok(Method::MlIntegral),
            "closed" | "closedform2" => Ok(Method::ClosedForm2),
            "jtp" | "mcjtp" => Ok(Method::McJtp),
            "poisson" | "mcpoisson" => Ok(Method::McPoisson),
            "laplace" | "laplaceintegral" => Ok(Method::LaplaceIntegral),
            other => Err(format!("unknown method '{other}'")),
        }
    }
}

/// Accepts iff `(alpha, c)` lies in the validity region of `method`.
pub fn validate(params: &KernelParams, method: Method) -> Result<()> {
    if method.accepts(params.alpha) {
        Ok(())
    } else {
        Err(Error::out_of_domain("alpha", params.alpha, method.alpha_range()))
    }
}

/// An evaluated value with an absolute error bound and the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenValue {
    pub value: f64,
    pub error_bound: f64,
    pub method: Method,
    /// The bound is a proof-grade tail bound rather than a quadrature estimate.
    pub rigorous: bool,
}

impl GreenValue {
    pub(crate) fn new(value: f64, error_bound: f64, method: Method, rigorous: bool) -> Self {
        debug_assert!(error_bound >= 0.0);
        Self {
            value,
            error_bound,
            method,
            rigorous,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Spacing {
    Uniform(f64),
    Irregular,
}

/// Strictly increasing abscissae in `(0, π]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    points: Vec<f64>,
    spacing: Spacing,
}

impl Grid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::out_of_domain("grid", 0.0, "at least one point"));
        }
        for &x in &points {
            if !(x > 0.0 && x <= PI) {
                return Err(Error::out_of_domain("grid point", x, "(0, pi]"));
            }
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::out_of_domain("grid", f64::NAN, "strictly increasing points"));
        }
        let spacing = detect_spacing(&points);
        Ok(Self { points, spacing })
    }

    /// `n` equally spaced interior points `π i / (n + 1)`, `i = 1..=n`.
    pub fn interior(n: usize) -> Self {
        let h = PI / (n as f64 + 1.0);
        let points = (1..=n).map(|i| i as f64 * h).collect();
        Self {
            points,
            spacing: Spacing::Uniform(h),
        }
    }

    /// `n` equally spaced points `π i / n`, `i = 1..=n`, ending at `π`.
    pub fn up_to_pi(n: usize) -> Self {
        let h = PI / n as f64;
        let mut points: Vec<f64> = (1..=n).map(|i| i as f64 * h).collect();
        if let Some(last) = points.last_mut() {
            *last = PI;
        }
        Self {
            points,
            spacing: Spacing::Uniform(h),
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn detect_spacing(points: &[f64]) -> Spacing {
    if points.len() < 2 {
        return Spacing::Irregular;
    }
    let h = points[1] - points[0];
    let uniform = points
        .windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-12 * h.abs().max(1.0));
    if uniform {
        Spacing::Uniform(h)
    } else {
        Spacing::Irregular
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validity_table() {
        let p = |a| KernelParams::new(a, 1.0).unwrap();
        assert!(matches!(
            validate(&p(2.5), Method::Periodized),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(validate(&p(2.5), Method::Series).is_ok());
        assert!(matches!(
            validate(&p(1.2), Method::McPoisson),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(validate(&p(1.0), Method::McPoisson).is_ok());
        assert!(validate(&p(2.0), Method::ClosedForm2).is_ok());
        assert!(validate(&p(1.999), Method::ClosedForm2).is_err());
        assert!(validate(&p(3.0), Method::MlIntegral).is_err());
        assert!(validate(&p(4.0), Method::Series).is_ok());
    }

    #[test]
    fn constructor_rejects_bad_params() {
        assert!(KernelParams::new(0.0, 1.0).is_err());
        assert!(KernelParams::new(4.5, 1.0).is_err());
        assert!(KernelParams::new(1.0, 0.0).is_err());
        assert!(KernelParams::new(1.0, f64::NAN).is_err());
        let p = KernelParams::new(1.5, 2.0).unwrap();
        assert_eq!(p.beta(), 0.75);
        assert_eq!(p.gamma(), 0.375);
    }

    #[test]
    fn two_parses_to_exact_branch() {
        let a: f64 = "2".parse().unwrap();
        let b: f64 = "2.0".parse().unwrap();
        assert!(KernelParams::new(a, 1.0).unwrap().is_alpha2());
        assert!(KernelParams::new(b, 1.0).unwrap().is_alpha2());
        assert!(!KernelParams::new(2.0 + 1e-12, 1.0).unwrap().is_alpha2());
    }

    #[test]
    fn grid_invariants() {
        let g = Grid::interior(20);
        assert_eq!(g.len(), 20);
        assert!(g.points().iter().all(|&x| x > 0.0 && x < PI));
        assert!(matches!(g.spacing(), Spacing::Uniform(_)));
        assert_eq!(*Grid::up_to_pi(7).points().last().unwrap(), PI);
        assert!(Grid::new(vec![0.5, 0.4]).is_err());
        assert!(Grid::new(vec![0.0, 0.4]).is_err());
        assert!(Grid::new(vec![1.0, 4.0]).is_err());
        assert!(matches!(
            Grid::new(vec![0.1, 0.2, 0.5]).unwrap().spacing(),
            Spacing::Irregular
        ));
    }

    proptest::proptest! {
        #[test]
        fn validate_is_pure(alpha in 0.01f64..4.0, c in 0.01f64..10.0, m in 0usize..7) {
            let methods = [Method::Series, Method::Periodized, Method::MlIntegral,
                Method::ClosedForm2, Method::McJtp, Method::McPoisson, Method::LaplaceIntegral];
            let p = KernelParams::new(alpha, c).unwrap();
            let first = validate(&p, methods[m]);
            let second = validate(&p, methods[m]);
            proptest::prop_assert_eq!(first, second);
        }
    }
}
