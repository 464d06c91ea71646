//! Batch-means error bars.

/// Mean and standard error of an observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub batch_count: usize,
}

impl Estimate {
    /// Mean of the batch means, with `stderr = s / sqrt(n)` where `s` is the
    /// sample standard deviation of the batch means.
    pub fn from_batches(batches: &[f64]) -> Self {
        let n = batches.len();
        assert!(n >= 2, "need at least two batches");
        let mean = batches.iter().sum::<f64>() / n as f64;
        let var = batches.iter().map(|b| (b - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        Self {
            mean,
            stderr: (var / n as f64).sqrt(),
            batch_count: n,
        }
    }

    /// Distance to `target` in units of `stderr` (infinite for a zero error
    /// and a nonzero distance).
    pub fn sigmas_from(&self, target: f64) -> f64 {
        let d = (self.mean - target).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }
}

/// `P3 / sqrt(P2_12 P2_23 P2_13)` over batch means, with a delete-one
/// jackknife error.
pub fn ratio_estimate(p3: &[f64], p2: [&[f64]; 3]) -> Estimate {
    let n = p3.len();
    assert!(n >= 2 && p2.iter().all(|s| s.len() == n));
    let total = |s: &[f64]| s.iter().sum::<f64>();
    let ratio = |a: f64, b: f64, c: f64, d: f64| a / (b * c * d).sqrt();
    let sums = [total(p3), total(p2[0]), total(p2[1]), total(p2[2])];
    let nf = n as f64;
    let mean = ratio(sums[0] / nf, sums[1] / nf, sums[2] / nf, sums[3] / nf);
    let m = nf - 1.0;
    let leave_out: Vec<f64> = (0..n)
        .map(|i| {
            ratio(
                (sums[0] - p3[i]) / m,
                (sums[1] - p2[0][i]) / m,
                (sums[2] - p2[1][i]) / m,
                (sums[3] - p2[2][i]) / m,
            )
        })
        .collect();
    let avg = leave_out.iter().sum::<f64>() / nf;
    let var = leave_out.iter().map(|x| (x - avg).powi(2)).sum::<f64>() * (nf - 1.0) / nf;
    Estimate {
        mean,
        stderr: var.sqrt(),
        batch_count: n,
    }
}

/// Integrated autocorrelation time `1/2 + sum_t rho(t)` with Sokal's
/// self-consistent window `W >= 6 tau`. Returns `0.5` for a constant series.
pub fn integrated_autocorrelation(series: &[f64]) -> f64 {
    let n = series.len();
    if n < 4 {
        return 0.5;
    }
    let mean = series.iter().sum::<f64>() / n as f64;
    let centered: Vec<f64> = series.iter().map(|x| x - mean).collect();
    let c0 = centered.iter().map(|x| x * x).sum::<f64>() / n as f64;
    if c0 == 0.0 {
        return 0.5;
    }
    let mut tau = 0.5;
    let max_lag = n / 10;
    for t in 1..max_lag.max(2) {
        let ct = centered[..n - t]
            .iter()
            .zip(&centered[t..])
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / n as f64;
        tau += ct / c0;
        if t as f64 >= 6.0 * tau {
            break;
        }
    }
    tau.max(0.5)
}
