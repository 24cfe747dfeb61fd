use super::SimError;
use crate::decode::DecoderConfig;
use crate::graph::ParityCheckMatrix;
use crate::trapping::{critical_number_search, SearchScope, DEFAULT_PATTERN_CAP};

/// Low-noise FER model `FER(eps) ~ N_J eps^J` for the BSC.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorEstimate {
    /// Minimum critical number `J`.
    pub critical_number: usize,
    /// `N_J`, the number of weight-`J` patterns that fail.
    pub count: usize,
    /// The failing patterns themselves.
    pub failures: Vec<Vec<usize>>,
}

impl FloorEstimate {
    pub fn predicted_fer(&self, eps: f64) -> f64 {
        self.count as f64 * eps.powi(self.critical_number as i32)
    }

    pub fn predicted_curve(&self, eps: &[f64]) -> Vec<(f64, f64)> {
        eps.iter().map(|&e| (e, self.predicted_fer(e))).collect()
    }
}

/// Exhaustive search over all variables up to `max_weight` for `J` and `N_J`.
pub fn estimate_floor(
    h: &ParityCheckMatrix,
    config: &DecoderConfig,
    max_weight: usize,
) -> Result<FloorEstimate, SimError> {
    let res = critical_number_search(
        h,
        config,
        max_weight,
        &SearchScope::AllVariables,
        DEFAULT_PATTERN_CAP,
    )?;
    match res.critical_number {
        Some(j) => Ok(FloorEstimate {
            critical_number: j,
            count: res.failures.len(),
            failures: res.failures,
        }),
        None => Err(SimError::FloorBelowSearchDepth { max_weight }),
    }
}

/// `points` values from `lo` to `hi`, evenly spaced on a log scale.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..points)
                .map(|k| (a + (b - a) * k as f64 / (points - 1) as f64).exp())
                .collect()
        }
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
