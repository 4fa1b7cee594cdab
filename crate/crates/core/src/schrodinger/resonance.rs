use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::phase::match_energy;
use super::RadialProblem;
use crate::error::{Error, Result};
use crate::integrator::NfeCounting;
use crate::methods::MethodId;

/// Lowest resonance of the benchmark well.
pub const E1_REFERENCE: f64 = 163.215341;
/// Third resonance of the benchmark well.
pub const E3_REFERENCE: f64 = 989.701916;

/// Energy resolution of the coarse pre-scan that seeds bisection.
pub const SCAN_STEP: f64 = 0.5;

/// Minimum number of pre-scan intervals inside a narrow bracket.
const MIN_SCAN_INTERVALS: usize = 4;

const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Resonance {
    pub method: MethodId,
    pub energy: f64,
    /// Final bisection interval.
    pub bracket: (f64, f64),
    /// Number of full integrations (pre-scan plus bisection).
    pub integrations: u64,
    /// Grid nodes evaluated over all integrations.
    pub node_evaluations: u64,
    /// Stage evaluations over all integrations.
    pub stage_evaluations: u64,
}

impl Resonance {
    pub fn nfe(&self, counting: NfeCounting) -> u64 {
        match counting {
            NfeCounting::PerNewNode => self.node_evaluations,
            NfeCounting::PerStage => self.stage_evaluations,
        }
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    integrations: u64,
    nodes: u64,
    stages: u64,
}

impl Tally {
    fn add(&mut self, other: Tally) {
        self.integrations += other.integrations;
        self.nodes += other.nodes;
        self.stages += other.stages;
    }
}

/// `D = B w cos d` at one energy: its sign changes exactly where the phase
/// shift crosses `pi/2` modulo `pi`.
fn cos_component(method: MethodId, template: &RadialProblem, energy: f64) -> Result<(f64, Tally)> {
    let (shift, traj) = match_energy(method, &template.with_energy(energy))?;
    let tally = Tally {
        integrations: 1,
        nodes: traj.nfe(NfeCounting::PerNewNode),
        stages: traj.nfe(NfeCounting::PerStage),
    };
    Ok((shift.denominator, tally))
}

fn scan_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let m = (((hi - lo) / step).ceil() as usize).max(MIN_SCAN_INTERVALS);
    (0..=m)
        .map(|i| lo + (hi - lo) * i as f64 / m as f64)
        .collect()
}

fn validate(lo: f64, hi: f64, tol: f64) -> Result<()> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::Precondition(format!(
            "energy bracket [{lo}, {hi}] must be positive and increasing"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// An energy interval and the values of `D` at its ends.
type SignChange = ((f64, f64), (f64, f64));

/// Pre-scans `energies` and returns the sign-change intervals of `D`.
fn prescan(
    method: MethodId,
    template: &RadialProblem,
    energies: &[f64],
    tally: &mut Tally,
) -> Result<Vec<SignChange>> {
    let values: Vec<(f64, Tally)> = energies
        .par_iter()
        .map(|&e| cos_component(method, template, e))
        .collect::<Result<_>>()?;
    for (_, t) in &values {
        tally.add(*t);
    }
    let mut brackets = Vec::new();
    for i in 0..energies.len() - 1 {
        let (a, b) = (values[i].0, values[i + 1].0);
        if a == 0.0 || a.signum() != b.signum() {
            brackets.push(((energies[i], a), (energies[i + 1], b)));
        }
    }
    Ok(brackets)
}

fn bisect(
    method: MethodId,
    template: &RadialProblem,
    mut lo: (f64, f64),
    mut hi: (f64, f64),
    tol: f64,
    tally: &mut Tally,
) -> Result<(f64, (f64, f64))> {
    if lo.1 == 0.0 {
        return Ok((lo.0, (lo.0, lo.0)));
    }
    for _ in 0..MAX_BISECTIONS {
        if hi.0 - lo.0 <= 2.0 * tol {
            break;
        }
        let mid = 0.5 * (lo.0 + hi.0);
        if mid <= lo.0 || mid >= hi.0 {
            break;
        }
        let (d, t) = cos_component(method, template, mid)?;
        tally.add(t);
        if d == 0.0 {
            return Ok((mid, (mid, mid)));
        }
        if d.signum() == lo.1.signum() {
            lo = (mid, d);
        } else {
            hi = (mid, d);
        }
    }
    Ok((0.5 * (lo.0 + hi.0), (lo.0, hi.0)))
}

/// Locates the energy in `bracket` at which the phase shift equals `pi/2`
/// (mod `pi`), to within `tol`.
///
/// A pre-scan at resolution [`SCAN_STEP`] (at least four intervals) finds the
/// crossings; if there are several, the one nearest the bracket centre is
/// refined by bisection.
pub fn resonance(
    method: MethodId,
    template: &RadialProblem,
    bracket: (f64, f64),
    tol: f64,
) -> Result<Resonance> {
    let (lo, hi) = bracket;
    validate(lo, hi, tol)?;
    let mut tally = Tally::default();
    let grid = scan_grid(lo, hi, SCAN_STEP);
    let brackets = prescan(method, template, &grid, &mut tally)?;
    let centre = 0.5 * (lo + hi);
    let chosen = brackets
        .into_iter()
        .min_by(|a, b| {
            let da = (0.5 * (a.0 .0 + a.1 .0) - centre).abs();
            let db = (0.5 * (b.0 .0 + b.1 .0) - centre).abs();
            da.total_cmp(&db)
        })
        .ok_or(Error::NoBracket { lo, hi })?;
    let (energy, final_bracket) = bisect(method, template, chosen.0, chosen.1, tol, &mut tally)?;
    Ok(Resonance {
        method,
        energy,
        bracket: final_bracket,
        integrations: tally.integrations,
        node_evaluations: tally.nodes,
        stage_evaluations: tally.stages,
    })
}

/// A resonance found by [`scan_resonances`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub energy: f64,
    /// The pre-scan interval the crossing was found in.
    pub scan_interval: (f64, f64),
    /// `"E1"` or `"E3"` when the crossing is one of the two reference values.
    pub label: Option<String>,
}

fn label_for(energy: f64) -> Option<String> {
    if (energy - E1_REFERENCE).abs() < SCAN_STEP {
        Some("E1".to_string())
    } else if (energy - E3_REFERENCE).abs() < SCAN_STEP {
        Some("E3".to_string())
    } else {
        None
    }
}

/// Every crossing of the resonance condition in `[lo, hi]`, scanned at
/// resolution `step` and refined to `tol`.
pub fn scan_resonances(
    method: MethodId,
    template: &RadialProblem,
    range: (f64, f64),
    step: f64,
    tol: f64,
) -> Result<Vec<Crossing>> {
    let (lo, hi) = range;
    validate(lo, hi, tol)?;
    if !(step > 0.0) {
        return Err(Error::Precondition(format!(
            "scan step must be positive, got {step}"
        )));
    }
    let mut tally = Tally::default();
    let grid = scan_grid(lo, hi, step);
    let brackets = prescan(method, template, &grid, &mut tally)?;
    brackets
        .into_par_iter()
        .map(|(a, b)| {
            let mut t = Tally::default();
            let (energy, _) = bisect(method, template, a, b, tol, &mut t)?;
            Ok(Crossing {
                energy,
                scan_interval: (a.0, b.0),
                label: label_for(energy),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_grid_has_minimum_resolution() {
        let g = scan_grid(160.0, 161.0, 0.5);
        assert_eq!(g.len(), MIN_SCAN_INTERVALS + 1);
        let g = scan_grid(1.0, 11.0, 0.5);
        assert_eq!(g.len(), 21);
        assert_eq!(*g.last().unwrap(), 11.0);
    }

    #[test]
    fn bad_brackets() {
        let p = RadialProblem::woods_saxon(1.0, 0.03);
        assert!(resonance(MethodId::Pl4, &p, (5.0, 2.0), 1e-6).is_err());
        assert!(resonance(MethodId::Pl4, &p, (2.0, 5.0), 0.0).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(label_for(163.3).as_deref(), Some("E1"));
        assert_eq!(label_for(989.5).as_deref(), Some("E3"));
        assert_eq!(label_for(341.0), None);
    }
}
