mod common;

use fracgreen::error::Error;
use fracgreen::mittag_leffler::*;
use fracgreen::special::rgamma;
use proptest::prelude::*;

fn cfg() -> MlRegimeConfig {
    MlRegimeConfig::default()
}

#[test]
fn exponential_case() {
    for i in 0..=3000 {
        let z = -30.0 * i as f64 / 3000.0;
        let v = ml_eval(1.0, 1.0, z, &cfg()).unwrap();
        assert!((v - z.exp()).abs() < 1e-12, "{z}");
    }
    // the series regime alone on the part of the axis it covers
    for i in 0..=100 {
        let z = -10.0 * i as f64 / 100.0;
        let s = series(1.0, 1.0, z, 1e-13);
        assert!((s.value - z.exp()).abs() < 1e-12, "{z}");
    }
}

#[test]
fn sine_identity() {
    for i in 1..=2000 {
        let x = 10.0 * i as f64 / 2000.0;
        let v = ml_eval(2.0, 2.0, -x * x, &cfg()).unwrap();
        assert!((v * x - x.sin()).abs() < 1e-10, "{x}: {}", v * x - x.sin());
    }
}

#[test]
fn cosine_identity() {
    for i in 0..=1000 {
        let x = 10.0 * i as f64 / 1000.0;
        let v = ml_eval(2.0, 1.0, -x * x, &cfg()).unwrap();
        assert!((v - x.cos()).abs() < 1e-10, "{x}");
    }
}

#[test]
fn half_order_erfc() {
    // E_{1/2,1}(-x) = exp(x²) erfc(x)
    for x in [0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 20.0] {
        let want = libm::exp(x * x) * libm::erfc(x);
        let v = ml_eval(0.5, 1.0, -x, &cfg()).unwrap();
        assert!(((v - want) / want).abs() < 1e-9, "{x}: {v} vs {want}");
    }
}

/// `∫₀^∞ e^{-nt} y(t) dt` with `t = u^{1/α}`, which turns `t^{α-1} dt` into `du/α`.
fn laplace_oracle(alpha: f64, c: f64, n: f64) -> f64 {
    let f = |u: f64| {
        if u == 0.0 {
            c * rgamma(alpha) / alpha
        } else {
            let t = u.powf(1.0 / alpha);
            y_density(alpha, c, t, &cfg()).unwrap() * u.powf((1.0 - alpha) / alpha) / alpha * (-n * t).exp()
        }
    };
    let end = (45.0 / n).powf(alpha);
    let mut breaks = vec![0.0];
    let mut b = 0.5;
    while b < end {
        breaks.push(b);
        b *= 2.0;
    }
    breaks.push(end);
    breaks.windows(2).map(|w| common::simpson(&f, w[0], w[1], 1e-11)).sum()
}

#[test]
fn laplace_identity() {
    for alpha in [0.3, 0.5, 0.8, 1.0, 1.5, 1.9] {
        for c in [0.5, 1.0, 4.0] {
            for n in [1.0, 2.0, 3.0] {
                let got = laplace_oracle(alpha, c, n);
                let want = c / (c + n.powf(alpha));
                assert!((got - want).abs() < 1e-7, "{alpha} {c} {n}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn y_density_is_normalised() {
    // total mass is E_{α,1}(0) - E_{α,1}(-c T^α) → 1
    for alpha in [0.3, 0.7, 1.0] {
        let f = |u: f64| {
            if u == 0.0 {
                rgamma(alpha) / alpha
            } else {
                y_density(alpha, 1.0, u.powf(1.0 / alpha), &cfg()).unwrap() * u.powf((1.0 - alpha) / alpha) / alpha
            }
        };
        let end = 200.0;
        let body = common::simpson(&f, 0.0, end, 1e-10);
        let tail = ml_eval(alpha, 1.0, -end, &cfg()).unwrap();
        assert!((body + tail - 1.0).abs() < 1e-8, "{alpha}: {}", body + tail);
        assert!(tail > 0.0);
    }
}

#[test]
fn y_density_positive_below_one() {
    for alpha in [0.2, 0.5, 0.9, 1.0] {
        for t in [1e-6, 0.01, 0.5, 3.0, 40.0, 150.0] {
            assert!(y_density(alpha, 2.0, t, &cfg()).unwrap() > 0.0, "{alpha} {t}");
        }
    }
}

#[test]
fn regimes_agree_on_overlap() {
    for alpha in [0.4, 0.7, 1.3, 1.7] {
        for beta in [alpha, 1.0] {
            for r in [4.0, 6.0, 8.0, 9.5] {
                let s = series(alpha, beta, -r, 1e-14);
                if s.error > 1e-12 {
                    continue;
                }
                let c = contour(alpha, beta, r, 1e-13).unwrap();
                assert!((s.value - c.value).abs() < 1e-11, "{alpha} {beta} {r}");
            }
        }
    }
    // large r: asymptotic and contour
    for alpha in [0.5, 0.8, 1.5] {
        for r in [200.0, 1e3, 1e4] {
            let a = asymptotic(alpha, alpha, r, 8).unwrap();
            let c = contour(alpha, alpha, r, 1e-14).unwrap();
            assert!((a.value - c.value).abs() <= a.error + c.error + 1e-14, "{alpha} {r}");
        }
    }
}

#[test]
fn regimes_reported() {
    let v = ml_eval_detailed(0.5, 0.5, -1.0, &cfg()).unwrap();
    assert_eq!(v.regime, MlRegime::Series);
    let v = ml_eval_detailed(1.0, 1.0, -50.0, &cfg()).unwrap();
    assert_eq!(v.regime, MlRegime::Exponential);
    let v = ml_eval_detailed(0.5, 1.0, -1e6, &cfg()).unwrap();
    assert_eq!(v.regime, MlRegime::Asymptotic);
}

#[test]
fn positive_arguments_outside_radius_rejected() {
    assert!(matches!(ml_eval(0.5, 1.0, 50.0, &cfg()), Err(Error::OutOfDomain { .. })));
    assert!(ml_eval(0.5, 1.0, 2.0, &cfg()).unwrap() > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn completely_monotone_below_one(alpha in 0.05f64..1.0, r1 in 0.0f64..500.0, dr in 0.01f64..50.0) {
        // E_{α,1}(-r) is completely monotone in r for α ∈ (0,1]
        let a = ml_eval(alpha, 1.0, -r1, &cfg()).unwrap();
        let b = ml_eval(alpha, 1.0, -(r1 + dr), &cfg()).unwrap();
        prop_assert!(a > 0.0 && b > 0.0 && b < a);
    }

    #[test]
    fn recurrence(alpha in 0.2f64..2.0, beta in 0.3f64..2.0, r in 0.01f64..40.0) {
        // E_{α,β}(z) = 1/Γ(β) + z E_{α,α+β}(z)
        let z = -r;
        let lhs = ml_eval(alpha, beta, z, &cfg());
        let rhs = ml_eval(alpha, alpha + beta, z, &cfg());
        if let (Ok(l), Ok(e)) = (lhs, rhs) {
            let rhs = rgamma(beta) + z * e;
            prop_assert!((l - rhs).abs() < 1e-9 * (1.0 + r), "{l} vs {rhs}");
        }
    }
}
