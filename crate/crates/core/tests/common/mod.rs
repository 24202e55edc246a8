//! Test-only oracles, independent of the library's quadrature and series code.
#![allow(dead_code)]

/// Adaptive Simpson on `[a, b]`.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `∫₀^∞ f` via `t = u/(1-u)` on `[0, 1)`, split into pieces so that Simpson
/// sees smooth integrands; `f` must decay at infinity.
pub fn simpson_half_line<F: Fn(f64) -> f64>(f: &F, breaks: &[f64], tol: f64) -> f64 {
    let mut total = 0.0;
    for w in breaks.windows(2) {
        total += simpson(f, w[0], w[1], tol / breaks.len() as f64);
    }
    let last = *breaks.last().unwrap();
    let g = |u: f64| {
        if u >= 1.0 {
            0.0
        } else {
            let t = last + u / (1.0 - u);
            f(t) / ((1.0 - u) * (1.0 - u))
        }
    };
    total + simpson(&g, 0.0, 1.0, tol)
}

/// Composite trapezoid with Richardson extrapolation over `levels` halvings.
pub fn trapezoid_richardson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n0: usize, levels: usize) -> f64 {
    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut n = n0;
    for _ in 0..levels {
        let h = (b - a) / n as f64;
        let mut s = 0.5 * (f(a) + f(b));
        for i in 1..n {
            s += f(a + i as f64 * h);
        }
        let mut row = vec![h * s];
        let prev = table.last().cloned();
        if let Some(prev) = prev {
            let mut factor = 4.0;
            for j in 0..prev.len() {
                let r = row[j] + (row[j] - prev[j]) / (factor - 1.0);
                row.push(r);
                factor *= 4.0;
            }
        }
        table.push(row);
        n *= 2;
    }
    *table.last().unwrap().last().unwrap()
}

/// Central finite difference of order one.
pub fn central_diff<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// `G_{2,c}(x)` written directly from the exponential sum.
pub fn closed_alpha2(c: f64, x: f64) -> f64 {
    let k = c.sqrt();
    let pi = std::f64::consts::PI;
    ((-k * x).exp() + (-k * (2.0 * pi - x)).exp()) / (2.0 * k * (1.0 - (-2.0 * k * pi).exp()))
}

/// Plain truncated Fourier sum, for `α` large enough that the tail is negligible.
pub fn fourier_oracle(alpha: f64, c: f64, x: f64, n: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let mut s = 0.0;
    for k in (1..=n).rev() {
        let kf = k as f64;
        s += (kf * x).cos() / (c + kf.powf(alpha));
    }
    (1.0 / c + 2.0 * s) / (2.0 * pi)
}
