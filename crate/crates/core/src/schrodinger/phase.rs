use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bessel_pair, integrate_radial, RadialProblem};
use crate::error::{Error, Result};
use crate::integrator::Trajectory;
use crate::methods::MethodId;

/// Matches whose `hypot(N, D)` falls below this fraction of `|y1| + |y2|` are
/// treated as degenerate.
const MATCH_FLOOR: f64 = 1e-10;

/// The phase shift at one energy together with the unnormalised matching
/// quantities it was formed from.
///
/// Asymptotically `y = B (S cos d + C sin d)`, so with `w = sin(k (x1 - x2))`
/// the numerator is `N = B w sin d` and the denominator `D = B w cos d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseShift {
    pub tan_delta: f64,
    /// `atan(tan_delta)` in `(-pi/2, pi/2]`.
    pub delta: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub x1: f64,
    pub x2: f64,
}

impl PhaseShift {
    fn from_parts(numerator: f64, denominator: f64, x1: f64, x2: f64) -> Self {
        let tan_delta = numerator / denominator;
        let delta = if denominator == 0.0 {
            FRAC_PI_2
        } else {
            let d = tan_delta.atan();
            if d <= -FRAC_PI_2 {
                FRAC_PI_2
            } else {
                d
            }
        };
        PhaseShift {
            tan_delta,
            delta,
            numerator,
            denominator,
            x1,
            x2,
        }
    }

    /// `atan2(N, D)`: equals `delta` up to a constant offset of 0 or pi fixed
    /// by the sign of the amplitude, and is continuous in the energy.
    pub fn angle(&self) -> f64 {
        self.numerator.atan2(self.denominator)
    }
}

/// Phase shift matched at the last node `x1` and `x2 = x1 - h`.
pub fn phase_shift(traj: &Trajectory, problem: &RadialProblem) -> Result<PhaseShift> {
    phase_shift_at(traj, problem, 1)
}

/// Phase shift matched at the last node `x1` and the node `back` steps
/// before it.
///
/// `tan d = [y(x2) S(x1) - y(x1) S(x2)] / [y(x1) C(x2) - y(x2) C(x1)]`
pub fn phase_shift_at(
    traj: &Trajectory,
    problem: &RadialProblem,
    back: usize,
) -> Result<PhaseShift> {
    let n = traj.ys.len();
    if back == 0 || back >= n {
        return Err(Error::Precondition(format!(
            "matching offset {back} outside a trajectory of {n} nodes"
        )));
    }
    let (x1, y1) = (traj.xs[n - 1], traj.ys[n - 1]);
    let (x2, y2) = (traj.xs[n - 1 - back], traj.ys[n - 1 - back]);
    let k = problem.k();
    let (s1, c1) = bessel_pair(problem.l, k * x1)?;
    let (s2, c2) = bessel_pair(problem.l, k * x2)?;
    let num = y2 * s1 - y1 * s2;
    let den = y1 * c2 - y2 * c1;
    let scale = y1.abs() + y2.abs();
    if !(num.hypot(den) > MATCH_FLOOR * scale) {
        return Err(Error::DegenerateMatch { x1, x2 });
    }
    Ok(PhaseShift::from_parts(num, den, x1, x2))
}

/// Integrates at `problem.energy` and matches, retrying with `x2 = x1 - 2h`
/// when the first pair is degenerate.
pub(crate) fn match_energy(
    method: MethodId,
    problem: &RadialProblem,
) -> Result<(PhaseShift, Trajectory)> {
    let traj = integrate_radial(method, problem)?;
    let shift = match phase_shift(&traj, problem) {
        Err(Error::DegenerateMatch { .. }) => phase_shift_at(&traj, problem, 2)?,
        other => other?,
    };
    Ok((shift, traj))
}

/// One point of an energy scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSample {
    pub energy: f64,
    pub shift: PhaseShift,
    /// Phase shift continued across the `+-pi/2` branch points of `atan`.
    pub unwrapped: f64,
}

/// Phase shifts at increasing `energies`, unwrapped so that the sequence is
/// continuous. The first sample keeps its principal value.
pub fn phase_scan(
    method: MethodId,
    template: &RadialProblem,
    energies: &[f64],
) -> Result<Vec<PhaseSample>> {
    let shifts: Vec<PhaseShift> = energies
        .par_iter()
        .map(|&e| match_energy(method, &template.with_energy(e)).map(|(s, _)| s))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(shifts.len());
    let mut prev: Option<(f64, f64)> = None;
    for (&energy, shift) in energies.iter().zip(shifts) {
        let angle = shift.angle();
        let unwrapped = match prev {
            None => shift.delta,
            Some((prev_angle, prev_unwrapped)) => prev_unwrapped + wrap(angle - prev_angle),
        };
        prev = Some((angle, unwrapped));
        out.push(PhaseSample {
            energy,
            shift,
            unwrapped,
        });
    }
    Ok(out)
}

/// Reduces an angle difference to `(-pi, pi]`.
fn wrap(d: f64) -> f64 {
    let r = d.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(problem: &RadialProblem, f: impl Fn(f64) -> f64) -> Trajectory {
        let xs: Vec<f64> = (0..=100).map(|i| 10.0 + i as f64 * problem.h).collect();
        let ys = xs.iter().map(|&x| f(x)).collect();
        Trajectory {
            method: MethodId::Numerov,
            xs,
            ys,
            h: problem.h,
            n_evals: 0,
        }
    }

    #[test]
    fn pure_sine_has_zero_shift() {
        let p = RadialProblem::woods_saxon(4.0, 0.05);
        let t = synthetic(&p, |x| 3.0 * (2.0 * x).sin());
        let s = phase_shift(&t, &p).unwrap();
        assert!(s.tan_delta.abs() < 1e-12);
    }

    #[test]
    fn pure_cosine_is_half_pi() {
        let p = RadialProblem::woods_saxon(4.0, 0.05);
        let t = synthetic(&p, |x| -2.0 * (2.0 * x).cos());
        let s = phase_shift(&t, &p).unwrap();
        assert!((s.delta - FRAC_PI_2).abs() < 1e-10, "{}", s.delta);
    }

    #[test]
    fn recovers_a_known_shift() {
        let p = RadialProblem::woods_saxon(9.0, 0.01);
        let d: f64 = 0.7;
        let t = synthetic(&p, |x| 0.4 * (3.0 * x + d).sin());
        let s = phase_shift(&t, &p).unwrap();
        assert!((s.delta - d).abs() < 1e-12);
        let s2 = phase_shift_at(&t, &p, 2).unwrap();
        assert!((s2.delta - d).abs() < 1e-12);
    }

    #[test]
    fn degenerate_match_is_reported() {
        let p = RadialProblem::woods_saxon(9.0, 0.01);
        let t = synthetic(&p, |_| 0.0);
        assert!(matches!(
            phase_shift(&t, &p),
            Err(Error::DegenerateMatch { .. })
        ));
    }

    #[test]
    fn wrap_range() {
        assert!((wrap(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap(-0.1) + 0.1).abs() < 1e-15);
        assert_eq!(wrap(PI), PI);
    }
}
