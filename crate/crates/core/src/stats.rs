//! Small statistics toolkit: summaries, Kolmogorov–Smirnov tests and least
//! squares slopes.

use serde::Serialize;

use crate::error::{param, Result};

/// Sum by recursive halving; the rounding error grows like `log n`.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        return values.iter().fold(0.0, |a, b| a + b);
    }
    let (l, r) = values.split_at(values.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    /// Unbiased sample variance (0 for a single value).
    pub variance: f64,
    /// Standard error of the mean.
    pub std_err: f64,
    pub min: f64,
    pub max: f64,
}

pub fn summarize(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(param("cannot summarise an empty sample"));
    }
    let n = values.len();
    let mean = pairwise_sum(values) / n as f64;
    let dev: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let variance = if n > 1 { pairwise_sum(&dev) / (n - 1) as f64 } else { 0.0 };
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(Summary { n, mean, variance, std_err: (variance / n as f64).sqrt(), min, max })
}

/// Sample skewness and excess kurtosis (moment estimators).
pub fn shape_moments(values: &[f64]) -> Result<(f64, f64)> {
    let s = summarize(values)?;
    let n = values.len() as f64;
    let m2 = pairwise_sum(&values.iter().map(|v| (v - s.mean).powi(2)).collect::<Vec<_>>()) / n;
    let m3 = pairwise_sum(&values.iter().map(|v| (v - s.mean).powi(3)).collect::<Vec<_>>()) / n;
    let m4 = pairwise_sum(&values.iter().map(|v| (v - s.mean).powi(4)).collect::<Vec<_>>()) / n;
    if m2 == 0.0 {
        return Ok((0.0, 0.0));
    }
    Ok((m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0))
}

pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(param("median of an empty sample"));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Ok(if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
}

impl KsResult {
    pub fn rejects(&self, level: f64) -> bool {
        self.p_value < level
    }
}

/// Kolmogorov survival function `Q(λ) = 2 Σ (-1)^{k-1} e^{-2k²λ²}`.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-17 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// One-sample KS test of `sample` against the continuous CDF `cdf`.
///
/// The p-value uses the asymptotic distribution with Stephens' small-sample
/// correction `λ = (√n + 0.12 + 0.11/√n) D`.
pub fn ks_test(sample: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KsResult> {
    if sample.is_empty() {
        return Err(param("KS test on an empty sample"));
    }
    let mut v = sample.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in v.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    let sn = n.sqrt();
    Ok(KsResult { statistic: d, p_value: kolmogorov_q((sn + 0.12 + 0.11 / sn) * d), n: v.len() })
}

/// Two-sample KS test.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.is_empty() || b.is_empty() {
        return Err(param("KS test on an empty sample"));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
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
    let ne = (na * nb / (na + nb)).sqrt();
    Ok(KsResult { statistic: d, p_value: kolmogorov_q((ne + 0.12 + 0.11 / ne) * d), n: a.len() + b.len() })
}

/// Exponential CDF with rate `rate`.
pub fn exp_cdf(rate: f64) -> impl Fn(f64) -> f64 {
    move |x| if x <= 0.0 { 0.0 } else { -(-rate * x).exp_m1() }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope (NaN with fewer than three points).
    pub std_err: f64,
}

/// Ordinary least squares fit `y = a + b x`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Result<SlopeFit> {
    if xs.len() != ys.len() {
        return Err(param("fit_slope needs equally long inputs"));
    }
    if xs.len() < 2 {
        return Err(param("fit_slope needs at least two points"));
    }
    let n = xs.len() as f64;
    let mx = pairwise_sum(xs) / n;
    let my = pairwise_sum(ys) / n;
    let sxx = pairwise_sum(&xs.iter().map(|x| (x - mx) * (x - mx)).collect::<Vec<_>>());
    let sxy = pairwise_sum(&xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).collect::<Vec<_>>());
    if sxx == 0.0 {
        return Err(param("fit_slope needs at least two distinct x values"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let std_err = if xs.len() > 2 {
        let rss = pairwise_sum(
            &xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).collect::<Vec<_>>(),
        );
        (rss / (n - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    Ok(SlopeFit { slope, intercept, std_err })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{derive_seed, rng_from_seed};
    use rand::Rng;

    #[test]
    fn summaries() {
        let s = summarize(&[3.0; 10]).unwrap();
        assert_eq!((s.mean, s.variance, s.std_err), (3.0, 0.0, 0.0));
        let s = summarize(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(s.mean, 2.5);
        assert!((s.variance - 5.0 / 3.0).abs() < 1e-15);
        assert!(summarize(&[]).is_err());
        assert_eq!(median(&[3.0, 1.0, 2.0]).unwrap(), 2.0);
    }

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 499500.0);
    }

    #[test]
    fn exact_line_slope() {
        let xs = [0.0, 1.0, 2.0, 5.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        let f = fit_slope(&xs, &ys).unwrap();
        assert_eq!(f.slope, 2.0);
        assert_eq!(f.intercept, 1.0);
        assert_eq!(f.std_err, 0.0);
        assert!(fit_slope(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn kolmogorov_tail_values() {
        // Q(1.3581) is the 5% critical point, Q(1.6276) the 1% one.
        assert!((kolmogorov_q(1.3581) - 0.05).abs() < 1e-4);
        assert!((kolmogorov_q(1.6276) - 0.01).abs() < 1e-4);
        assert_eq!(kolmogorov_q(0.0), 1.0);
    }

    #[test]
    fn ks_calibration() {
        // Under the null the rejection rate at 1% is about 1%.
        let mut rejections = 0;
        for seed in 0..400 {
            let mut rng = rng_from_seed(derive_seed(17, seed));
            let sample: Vec<f64> = (0..1000).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
            if ks_test(&sample, exp_cdf(1.0)).unwrap().rejects(0.01) {
                rejections += 1;
            }
        }
        assert!(rejections <= 12, "rejections {rejections}");
    }

    #[test]
    fn ks_detects_wrong_rate() {
        let mut rng = rng_from_seed(5);
        let sample: Vec<f64> = (0..1000).map(|_| -(1.0 - rng.random::<f64>()).ln() / 2.0).collect();
        assert!(ks_test(&sample, exp_cdf(1.0)).unwrap().rejects(0.01));
    }

    #[test]
    fn two_sample_ks() {
        let mut rng = rng_from_seed(9);
        let a: Vec<f64> = (0..500).map(|_| rng.random::<f64>()).collect();
        let b: Vec<f64> = (0..500).map(|_| rng.random::<f64>()).collect();
        let c: Vec<f64> = (0..500).map(|_| rng.random::<f64>() + 0.2).collect();
        assert!(!ks_two_sample(&a, &b).unwrap().rejects(0.01));
        assert!(ks_two_sample(&a, &c).unwrap().rejects(0.01));
        assert_eq!(ks_two_sample(&a, &a).unwrap().statistic, 0.0);
    }
}
