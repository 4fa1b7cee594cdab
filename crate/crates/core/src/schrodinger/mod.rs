//! The radial Schrodinger equation `y'' = (l(l+1)/x^2 + V(x) - E) y` with the
//! Woods-Saxon potential: phase-shift extraction and resonance search.

mod bessel;
mod phase;
mod resonance;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrator::{integrate, Trajectory};
use crate::methods::MethodId;

pub use bessel::bessel_pair;
pub use phase::{phase_scan, phase_shift, phase_shift_at, PhaseSample, PhaseShift};
pub use resonance::{
    resonance, scan_resonances, Crossing, Resonance, E1_REFERENCE, E3_REFERENCE, SCAN_STEP,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WoodsSaxon {
    /// Well depth (negative for an attractive well).
    pub u0: f64,
    /// Surface diffuseness.
    pub a: f64,
    /// Nuclear radius.
    #[serde(rename = "x0")]
    pub x0: f64,
}

impl Default for WoodsSaxon {
    fn default() -> Self {
        WoodsSaxon {
            u0: -50.0,
            a: 0.6,
            x0: 7.0,
        }
    }
}

impl WoodsSaxon {
    /// `V(x) = u0 / (1 + z) - u0 z / (a (1 + z)^2)`, `z = exp((x - X0) / a)`.
    pub fn value(&self, x: f64) -> f64 {
        let z = ((x - self.x0) / self.a).exp();
        if !z.is_finite() {
            return 0.0;
        }
        let p = 1.0 + z;
        self.u0 / p - self.u0 * z / (self.a * p * p)
    }
}

/// Position of the step in the piecewise frequency rule.
pub const FREQUENCY_STEP_CENTRE: f64 = 6.5;

/// The piecewise frequency rule for the Woods-Saxon benchmark: the well is
/// replaced by the constants -50, -37.5, -25, -12.5 and 0 on the bands left of,
/// at and right of `x = 6.5`, and `v = sqrt(|Vc + E|)`.
///
/// Grid nodes rarely land exactly on `6.5 +- h`, so a node is assigned to the
/// band whose centre `6.5 + j h` (j = -1, 0, 1) is nearest; nodes more than
/// 1.5 steps away take the outer constants.
pub fn woods_saxon_frequency(energy: f64, x: f64, h: f64) -> f64 {
    let t = (x - FREQUENCY_STEP_CENTRE) / h;
    let vc = if t <= -1.5 {
        -50.0
    } else if t <= -0.5 {
        -37.5
    } else if t < 0.5 {
        -25.0
    } else if t < 1.5 {
        -12.5
    } else {
        0.0
    };
    (vc + energy).abs().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialProblem {
    pub potential: WoodsSaxon,
    /// Angular momentum quantum number.
    pub l: u32,
    pub energy: f64,
    /// Right end of the integration domain `[0, x_max]`.
    pub x_max: f64,
    pub h: f64,
}

impl RadialProblem {
    /// The benchmark problem: default well, `l = 0`, domain `[0, 15]`.
    pub fn woods_saxon(energy: f64, h: f64) -> Self {
        RadialProblem {
            potential: WoodsSaxon::default(),
            l: 0,
            energy,
            x_max: 15.0,
            h,
        }
    }

    pub fn with_energy(&self, energy: f64) -> Self {
        RadialProblem { energy, ..*self }
    }

    pub fn k(&self) -> f64 {
        self.energy.sqrt()
    }

    /// `W(x) = l(l+1)/x^2 + V(x) - E`.
    pub fn field(&self, x: f64) -> f64 {
        let l = self.l as f64;
        let centrifugal = if self.l == 0 {
            0.0
        } else {
            l * (l + 1.0) / (x * x)
        };
        centrifugal + self.potential.value(x) - self.energy
    }

    pub fn frequency(&self, x: f64) -> f64 {
        woods_saxon_frequency(self.energy, x, self.h)
    }

    /// First grid point and the two starting values. For `l = 0` the
    /// regular solution starts as `y(0) = 0`, `y(h) = h`; for `l > 0` the grid
    /// starts at `h` with `y = x^(l+1)` at `h` and `2h`.
    pub fn start(&self) -> (f64, f64, f64) {
        let h = self.h;
        if self.l == 0 {
            (0.0, 0.0, h)
        } else {
            let p = (self.l + 1) as i32;
            (h, h.powi(p), (2.0 * h).powi(p))
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0) || !self.h.is_finite() {
            return Err(Error::Precondition(format!(
                "step must be positive, got {}",
                self.h
            )));
        }
        if !(self.energy > 0.0) || !self.energy.is_finite() {
            return Err(Error::Precondition(format!(
                "energy must be positive, got {}",
                self.energy
            )));
        }
        if !(self.x_max > 4.0 * self.h) {
            return Err(Error::Precondition(format!(
                "domain end {} too short for step {}",
                self.x_max, self.h
            )));
        }
        Ok(())
    }
}

/// Integrates the regular solution of `problem` over `[0, x_max]`.
pub fn integrate_radial(method: MethodId, problem: &RadialProblem) -> Result<Trajectory> {
    problem.validate()?;
    let (x0, y0, y1) = problem.start();
    let p = *problem;
    integrate(
        method,
        &move |x: f64| p.field(x),
        &move |x: f64| p.frequency(x),
        x0,
        p.x_max,
        p.h,
        y0,
        y1,
    )
}
