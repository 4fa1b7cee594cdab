use serde::{Deserialize, Serialize};

use super::log_log_slope;
use crate::error::{Error, Result};
use crate::integrator::{integrate, ConstantFrequency};
use crate::methods::MethodId;

/// `y'' = -omega^2 y`, `y = sin(omega x)`, integrated from 0 to `x_end` with
/// the coefficients fitted at a fixed frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticProblem {
    pub omega: f64,
    pub fit_frequency: f64,
    pub x_end: f64,
}

impl AnalyticProblem {
    pub fn harmonic(omega: f64, fit_frequency: f64, x_end: f64) -> Self {
        AnalyticProblem {
            omega,
            fit_frequency,
            x_end,
        }
    }

    pub fn exact(&self, x: f64) -> f64 {
        (self.omega * x).sin()
    }

    /// Absolute error at the last grid node for step `h`.
    pub fn endpoint_error(&self, method: MethodId, h: f64) -> Result<f64> {
        let w = -self.omega * self.omega;
        let t = integrate(
            method,
            &move |_x: f64| w,
            &ConstantFrequency(self.fit_frequency),
            0.0,
            self.x_end,
            h,
            0.0,
            self.exact(h),
        )?;
        let (x, y) = t.last();
        Ok((y - self.exact(x)).abs())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub method: MethodId,
    pub slope: f64,
    pub slope_stderr: f64,
    /// `(h, endpoint error)` pairs.
    pub errors: Vec<(f64, f64)>,
}

/// Least-squares slope of `log(error)` against `log(h)`.
pub fn convergence_order(
    method: MethodId,
    problem: &AnalyticProblem,
    h_values: &[f64],
) -> Result<ConvergenceReport> {
    if h_values.len() < 3 {
        return Err(Error::Precondition(format!(
            "need at least 3 step sizes, got {}",
            h_values.len()
        )));
    }
    if h_values.iter().any(|h| !(*h > 0.0)) {
        return Err(Error::Precondition("step sizes must be positive".into()));
    }
    let ratio = h_values[1] / h_values[0];
    let geometric = h_values
        .windows(2)
        .all(|w| ((w[1] / w[0]) / ratio - 1.0).abs() < 1e-9);
    if !geometric || (ratio - 1.0).abs() < 1e-9 {
        return Err(Error::Precondition(
            "step sizes must form a non-trivial geometric progression".into(),
        ));
    }
    let errors: Vec<f64> = h_values
        .iter()
        .map(|&h| problem.endpoint_error(method, h))
        .collect::<Result<_>>()?;
    let (slope, se) = log_log_slope(h_values, &errors)?;
    Ok(ConvergenceReport {
        method,
        slope,
        slope_stderr: se,
        errors: h_values.iter().cloned().zip(errors).collect(),
    })
}
