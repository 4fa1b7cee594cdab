//! Fixed-step propagation of linear problems `y'' = W(x) y`.
//!
//! For a linear right-hand side the hybrid stage `ybar_n` can be eliminated
//! algebraically, leaving a three-term recurrence whose `y_{n+1}` bracket is
//! solved directly. On `W = -omega^2` it reduces to
//! `A1 y_{n+1} + A0 y_n + A1 y_{n-1} = 0`.

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::methods::{coefficients, CoefficientSet, MethodId};

/// Leading brackets smaller than this are reported as [`Error::SingularStep`].
pub const STEP_FLOOR: f64 = 1e-12;

/// The coefficient function `W(x)` of `y'' = W(x) y`.
pub trait LinearField: Sync {
    fn w(&self, x: f64) -> f64;
}

impl<F: Fn(f64) -> f64 + Sync> LinearField for F {
    fn w(&self, x: f64) -> f64 {
        self(x)
    }
}

/// The fitted frequency `v(x) >= 0`; coefficients are evaluated at `H = v h`.
pub trait FrequencyProfile: Sync {
    fn frequency(&self, x: f64) -> f64;
}

impl<F: Fn(f64) -> f64 + Sync> FrequencyProfile for F {
    fn frequency(&self, x: f64) -> f64 {
        self(x)
    }
}

/// The same frequency everywhere.
#[derive(Debug, Clone, Copy)]
pub struct ConstantFrequency(pub f64);

impl FrequencyProfile for ConstantFrequency {
    fn frequency(&self, _x: f64) -> f64 {
        self.0
    }
}

/// How right-hand-side evaluations are tallied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NfeCounting {
    /// One evaluation per grid node: `W` is shared between neighbouring steps.
    #[default]
    PerNewNode,
    /// Three evaluations per step for the hybrid methods, one for Numerov.
    PerStage,
}

impl std::str::FromStr for NfeCounting {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "per-new-node" => Ok(NfeCounting::PerNewNode),
            "per-stage" => Ok(NfeCounting::PerStage),
            other => Err(format!(
                "unknown counting mode `{other}` (expected per-new-node or per-stage)"
            )),
        }
    }
}

impl std::fmt::Display for NfeCounting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NfeCounting::PerNewNode => "per-new-node",
            NfeCounting::PerStage => "per-stage",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub method: MethodId,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub h: f64,
    /// Evaluations of `W`, one per grid node.
    pub n_evals: u64,
}

impl Trajectory {
    pub fn steps(&self) -> u64 {
        self.xs.len().saturating_sub(1) as u64
    }

    pub fn last(&self) -> (f64, f64) {
        let n = self.xs.len() - 1;
        (self.xs[n], self.ys[n])
    }

    pub fn nfe(&self, counting: NfeCounting) -> u64 {
        match counting {
            NfeCounting::PerNewNode => self.n_evals,
            NfeCounting::PerStage => {
                // two starting values plus the stages of every step
                let per_step = if self.method.is_fitted() { 3 } else { 1 };
                2 + per_step * (self.steps() - 1)
            }
        }
    }
}

/// Increment of the difference `d_n = y_n - y_{n-1}` over one step.
///
/// Writing the brackets of the linear step as `1 + e_next`, `2 + e_curr` and
/// `-1 + e_prev`, where every `e` is `O(h^2)`, the step becomes
/// `d_{n+1} = d_n + ((e_curr - e_next) y_n + e_prev y_{n-1} - e_next d_n) / (1 + e_next)`.
/// The increment is small, so it is computed in plain precision while the
/// running sums for `d` and `y` are carried with compensation; the plain
/// three-term form instead lets rounding accumulate into a frequency error.
fn increment(
    c: &CoefficientSet,
    w: [f64; 3],
    y_curr: f64,
    d_curr: f64,
    h: f64,
) -> std::result::Result<f64, f64> {
    let [w_prev, w_curr, w_next] = w;
    let h2 = h * h;
    let hybrid = c.a0 * h2 * h2 * c.b1;
    let e_next = -h2 * c.b0 * w_next + hybrid * w_curr * w_next;
    let lead = 1.0 + e_next;
    if !(lead.abs() >= STEP_FLOOR) {
        return Err(lead);
    }
    let e_curr = -c.c1_excess + h2 * c.b1 * w_curr + 2.0 * hybrid * w_curr * w_curr;
    let e_prev = h2 * c.b0 * w_prev - hybrid * w_curr * w_prev;
    let y_prev = y_curr - d_curr;
    Ok(((e_curr - e_next) * y_curr + e_prev * y_prev - e_next * d_curr) / lead)
}

/// One step of `method`: returns `y_{n+1}` from `y_{n-1}`, `y_n` and the field
/// at the three nodes, with coefficients evaluated at `H = h_arg`.
#[allow(clippy::too_many_arguments)]
pub fn step(
    method: MethodId,
    w_prev: f64,
    w_curr: f64,
    w_next: f64,
    y_prev: f64,
    y_curr: f64,
    h: f64,
    h_arg: f64,
) -> Result<f64> {
    let c = coefficients(method, h_arg)?;
    let d = y_curr - y_prev;
    increment(&c, [w_prev, w_curr, w_next], y_curr, d, h)
        .map(|inc| y_curr + (d + inc))
        .map_err(|bracket| Error::SingularStep {
            x: f64::NAN,
            bracket,
        })
}

/// Number of steps needed to reach `x_end` from `x0`; the last node is the
/// first one at or beyond `x_end` (up to rounding).
pub fn step_count(x0: f64, x_end: f64, h: f64) -> u64 {
    ((x_end - x0) / h - 1e-9).ceil().max(0.0) as u64
}

/// Integrates from the two starting values `y(x0) = y0`, `y(x0 + h) = y1`.
///
/// Coefficients are evaluated at `H = v(x_n) h` for each step centred on `x_n`.
#[allow(clippy::too_many_arguments)]
pub fn integrate(
    method: MethodId,
    field: &dyn LinearField,
    freq: &dyn FrequencyProfile,
    x0: f64,
    x_end: f64,
    h: f64,
    y0: f64,
    y1: f64,
) -> Result<Trajectory> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Precondition(format!(
            "step must be positive, got {h}"
        )));
    }
    if !(x_end > x0 + 2.0 * h) {
        return Err(Error::Precondition(format!(
            "interval [{x0}, {x_end}] must be longer than two steps of {h}"
        )));
    }
    let n = step_count(x0, x_end, h) as usize;
    let xs: Vec<f64> = (0..=n).map(|i| x0 + i as f64 * h).collect();
    let ws: Vec<f64> = xs.iter().map(|&x| field.w(x)).collect();

    let mut ys = Vec::with_capacity(n + 1);
    ys.push(y0);
    ys.push(y1);

    let mut y = Dd::new(y1);
    let mut d = Dd::new(y1) - y0;
    let mut cached: Option<CoefficientSet> = None;
    for i in 1..n {
        let h_arg = freq.frequency(xs[i]) * h;
        let c = match cached {
            Some(c) if c.h_arg == h_arg => c,
            _ => {
                let c = coefficients(method, h_arg)?;
                cached = Some(c);
                c
            }
        };
        let inc = increment(&c, [ws[i - 1], ws[i], ws[i + 1]], y.to_f64(), d.to_f64(), h).map_err(
            |bracket| Error::SingularStep {
                x: xs[i + 1],
                bracket,
            },
        )?;
        d = d + inc;
        y = y + d;
        ys.push(y.to_f64());
    }

    Ok(Trajectory {
        method,
        xs,
        ys,
        h,
        n_evals: (n + 1) as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_motion_is_linear_extrapolation() {
        for m in MethodId::ALL {
            let y = step(m, 0.0, 0.0, 0.0, 1.0, 3.0, 0.1, 0.0).unwrap();
            assert!((y - 5.0).abs() < 1e-15, "{m}: {y}");
        }
    }

    #[test]
    fn pl1_propagates_cosine_exactly() {
        let omega = 3.0_f64;
        let h = 0.1;
        let w = -omega * omega;
        let x = 0.4;
        let y = step(
            MethodId::Pl1,
            w,
            w,
            w,
            (omega * (x - h)).cos(),
            (omega * x).cos(),
            h,
            omega * h,
        )
        .unwrap();
        assert!((y - (omega * (x + h)).cos()).abs() < 1e-12);
    }

    #[test]
    fn short_interval_is_rejected() {
        let r = integrate(
            MethodId::Pl1,
            &|_x: f64| -1.0,
            &ConstantFrequency(1.0),
            0.0,
            0.3,
            0.2,
            0.0,
            0.2,
        );
        assert!(matches!(r, Err(Error::Precondition(_))));
        let r = integrate(
            MethodId::Pl1,
            &|_x: f64| -1.0,
            &ConstantFrequency(1.0),
            0.0,
            1.0,
            -0.1,
            0.0,
            0.2,
        );
        assert!(r.is_err());
    }

    #[test]
    fn singular_bracket_reports_position() {
        // 1 - h^2 b0 W = 0 for Numerov when W = 12 / h^2
        let h = 0.1;
        let r = integrate(
            MethodId::Numerov,
            &move |_x: f64| 12.0 / (h * h),
            &ConstantFrequency(0.0),
            0.0,
            1.0,
            h,
            0.0,
            h,
        );
        match r {
            Err(Error::SingularStep { x, .. }) => assert!((x - 2.0 * h).abs() < 1e-12),
            other => panic!("expected SingularStep, got {other:?}"),
        }
    }

    #[test]
    fn evaluation_counts() {
        let t = integrate(
            MethodId::Pl2,
            &|_x: f64| -1.0,
            &ConstantFrequency(1.0),
            0.0,
            1.0,
            0.1,
            0.0,
            0.1_f64.sin(),
        )
        .unwrap();
        assert_eq!(t.xs.len(), 11);
        assert_eq!(t.n_evals, 11);
        assert_eq!(t.nfe(NfeCounting::PerNewNode), 11);
        assert_eq!(t.nfe(NfeCounting::PerStage), 2 + 3 * 9);
    }
}
