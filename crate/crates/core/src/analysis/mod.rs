//! Truncation-error diagnostics, convergence-order estimation and the
//! error-versus-cost harness for the resonance benchmark.

mod convergence;
mod efficiency;
mod growth;
mod lte;

pub use convergence::{convergence_order, AnalyticProblem, ConvergenceReport};
pub use efficiency::{
    efficiency_sweep, reference_energy, EfficiencyCurve, EfficiencyPoint, ReferenceKind,
    SWEEP_BRACKET_HALF_WIDTH, SWEEP_TOLERANCE,
};
pub use growth::{asymptotic_growth, log_spaced, lte_in_g, GrowthReport, ProfileJet};
pub use lte::{lte, LteDerivatives, LtePrediction};

use crate::error::{Error, Result};

/// Half-width of the slope confidence interval accepted by the fits.
pub const MAX_SLOPE_HALF_WIDTH: f64 = 0.2;

/// Least-squares line through `(xs, ys)`: `(slope, intercept, slope standard error)`.
pub(crate) fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let se = if xs.len() > 2 {
        (ssr / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    (slope, intercept, se)
}

/// Log-log slope with a confidence check: fails when twice the standard error
/// exceeds [`MAX_SLOPE_HALF_WIDTH`].
pub(crate) fn log_log_slope(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    if xs
        .iter()
        .chain(ys)
        .any(|v| !(v.abs() > 0.0) || !v.is_finite())
    {
        return Err(Error::Fit(
            "log-log fit needs finite non-zero samples".to_string(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.abs().ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let (slope, _, se) = fit_line(&lx, &ly);
    if !slope.is_finite() || 2.0 * se > MAX_SLOPE_HALF_WIDTH {
        return Err(Error::Fit(format!(
            "slope {slope} has confidence half-width {} above {MAX_SLOPE_HALF_WIDTH}",
            2.0 * se
        )));
    }
    Ok((slope, se))
}
