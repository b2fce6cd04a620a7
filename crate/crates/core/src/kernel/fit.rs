//! Power-law regression for decay rates.

use crate::error::{Error, Result};

/// Least-squares fit of `log v = c + exponent * log(1 + t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayFit {
    pub exponent: f64,
    pub intercept: f64,
    /// Largest absolute residual on the log scale.
    pub max_residual: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
}

pub const MIN_SAMPLES: usize = 8;
pub const MIN_WINDOW_START: f64 = 2.0;

/// `count` points log-uniformly spaced on `[t_min, t_max]`, endpoints included.
pub fn log_spaced(t_min: f64, t_max: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![t_min];
    }
    let (a, b) = (t_min.ln(), t_max.ln());
    let mut out: Vec<f64> = (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect();
    out[0] = t_min;
    out[count - 1] = t_max;
    out
}

pub fn fit_decay(samples: &[(f64, f64)]) -> Result<DecayFit> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "{} samples, need at least {MIN_SAMPLES}",
            samples.len()
        )));
    }
    if let Some(&(t, v)) = samples
        .iter()
        .find(|&&(t, v)| !(v > 0.0) || !t.is_finite() || !v.is_finite())
    {
        return Err(Error::InvalidData(format!(
            "sample ({t}, {v}) is not a positive finite value"
        )));
    }
    let t_min = samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let t_max = samples.iter().map(|s| s.0).fold(f64::NEG_INFINITY, f64::max);
    if t_min < MIN_WINDOW_START {
        return Err(Error::InvalidData(format!(
            "fit window starts at t = {t_min}, below {MIN_WINDOW_START}"
        )));
    }
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|s| (1.0 + s.0).ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::InsufficientData("all samples share one time".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let max_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - exponent * x).abs())
        .fold(0.0, f64::max);
    Ok(DecayFit {
        exponent,
        intercept,
        max_residual,
        t_min,
        t_max,
        samples: samples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_power_law() {
        let s: Vec<_> = log_spaced(4.0, 64.0, 16)
            .into_iter()
            .map(|t| (t, 3.0 * (1.0 + t).powf(-1.5)))
            .collect();
        let fit = fit_decay(&s).unwrap();
        assert!((fit.exponent + 1.5).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-12);
        assert!(fit.max_residual < 1e-12);
        assert_eq!((fit.t_min, fit.t_max, fit.samples), (4.0, 64.0, 16));
    }

    #[test]
    fn constant_data() {
        let s: Vec<_> = log_spaced(4.0, 64.0, 10).into_iter().map(|t| (t, 0.7)).collect();
        assert!(fit_decay(&s).unwrap().exponent.abs() < 1e-14);
    }

    #[test]
    fn noisy_power_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let s: Vec<_> = log_spaced(4.0, 64.0, 16)
                .into_iter()
                .map(|t| (t, (1.0 + t).powf(-1.0) * (1.0 + 0.01 * rng.random_range(-1.0..1.0))))
                .collect();
            worst = worst.max((fit_decay(&s).unwrap().exponent + 1.0).abs());
        }
        assert!(worst < 0.05, "worst deviation {worst}");
    }

    #[test]
    fn rejects_bad_input() {
        let good: Vec<_> = log_spaced(4.0, 64.0, 8).into_iter().map(|t| (t, 1.0 / t)).collect();
        assert!(fit_decay(&good[..7]).is_err());
        let mut bad = good.clone();
        bad[3].1 = 0.0;
        assert!(matches!(fit_decay(&bad), Err(Error::InvalidData(_))));
        let early: Vec<_> = log_spaced(1.0, 64.0, 8).into_iter().map(|t| (t, 1.0 / t)).collect();
        assert!(fit_decay(&early).is_err());
    }
}
