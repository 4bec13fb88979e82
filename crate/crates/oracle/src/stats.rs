//! Disorder-average bookkeeping.

/// Mean and standard error of a sample set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
}

impl Stats {
    /// Aggregate in fixed order (callers keep realization ordering).
    pub fn from_samples(samples: &[f64]) -> Stats {
        let n = samples.len();
        if n == 0 {
            return Stats { mean: f64::NAN, stderr: f64::NAN, n: 0 };
        }
        let mean = samples.iter().sum::<f64>() / n as f64;
        if n == 1 {
            return Stats { mean, stderr: 0.0, n };
        }
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        Stats { mean, stderr: (var / n as f64).sqrt(), n }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn mean_and_stderr() {
        let s = Stats::from_samples(&[1.0, 2.0, 3.0, 4.0]);
        assert_relative_eq!(s.mean, 2.5);
        // Sample variance 5/3, stderr = sqrt(5/12).
        assert_relative_eq!(s.stderr, (5.0f64 / 12.0).sqrt(), epsilon = 1e-14);
        assert_eq!(s.n, 4);
        let one = Stats::from_samples(&[7.0]);
        assert_eq!(one.stderr, 0.0);
    }
}
