//! Kolmogorov-Smirnov statistics.

/// One-sample statistic `sup |F_n - F|` against a continuous reference CDF.
/// Sorts `samples` in place.
pub fn ks_statistic<F>(samples: &mut [f64], cdf: F) -> f64
where
    F: Fn(f64) -> f64,
{
    let n = samples.len();
    if n == 0 {
        return 0.0;
    }
    samples.sort_by(f64::total_cmp);
    let nf = n as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let lo = f - i as f64 / nf;
            let hi = (i + 1) as f64 / nf - f;
            lo.max(hi)
        })
        .fold(0.0, f64::max)
}

/// Same as [`ks_statistic`] with precomputed CDF values at the sorted samples.
pub fn ks_from_sorted_cdf(cdf_values: &[f64]) -> f64 {
    let nf = cdf_values.len() as f64;
    cdf_values
        .iter()
        .enumerate()
        .map(|(i, &f)| (f - i as f64 / nf).max((i + 1) as f64 / nf - f))
        .fold(0.0, f64::max)
}

/// Two-sample statistic `sup |F_n - G_m|`. Sorts both inputs in place.
pub fn ks_two_sample(a: &mut [f64], b: &mut [f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}
