use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrator::NfeCounting;
use crate::methods::MethodId;
use crate::schrodinger::{resonance, RadialProblem, E1_REFERENCE, E3_REFERENCE};

/// Bisection tolerance used by the sweep; well below the smallest error
/// being measured.
pub const SWEEP_TOLERANCE: f64 = 1e-10;

/// Each resonance is sought in `[target - w, target + w]`.
pub const SWEEP_BRACKET_HALF_WIDTH: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceKind {
    /// One of the two published eigenvalues.
    Published,
    /// Richardson extrapolation of PL4 runs at `h = 15/2000` and `15/4000`.
    Extrapolated,
}

/// The "exact" energy errors are measured against.
pub fn reference_energy(template: &RadialProblem, target: f64) -> Result<(f64, ReferenceKind)> {
    for known in [E1_REFERENCE, E3_REFERENCE] {
        if (target - known).abs() < 1e-3 {
            return Ok((known, ReferenceKind::Published));
        }
    }
    let bracket = (
        (target - SWEEP_BRACKET_HALF_WIDTH).max(1e-3),
        target + SWEEP_BRACKET_HALF_WIDTH,
    );
    let run = |n: f64| {
        let p = RadialProblem {
            h: template.x_max / n,
            ..*template
        };
        resonance(MethodId::Pl4, &p, bracket, SWEEP_TOLERANCE).map(|r| r.energy)
    };
    let coarse = run(2000.0)?;
    let fine = run(4000.0)?;
    Ok((fine + (fine - coarse) / 63.0, ReferenceKind::Extrapolated))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyPoint {
    /// Number of steps across the domain.
    pub n: u64,
    pub h: f64,
    pub nfe: u64,
    pub energy: f64,
    /// `|E - E_reference|`.
    pub err: f64,
    /// `E - E_reference`.
    pub signed_err: f64,
}

impl EfficiencyPoint {
    pub fn log10_err(&self) -> f64 {
        self.err.log10()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyCurve {
    pub method: MethodId,
    pub target: f64,
    pub reference: f64,
    pub reference_kind: ReferenceKind,
    pub counting: NfeCounting,
    /// Sorted by increasing NFE.
    pub points: Vec<EfficiencyPoint>,
}

/// Runs `resonance` near `target` for every method and step and collects the
/// error against the reference energy as a function of cost.
pub fn efficiency_sweep(
    methods: &[MethodId],
    target: f64,
    h_values: &[f64],
    template: &RadialProblem,
    counting: NfeCounting,
) -> Result<BTreeMap<MethodId, EfficiencyCurve>> {
    if methods.is_empty() {
        return Ok(BTreeMap::new());
    }
    if h_values.is_empty() || h_values.iter().any(|h| !(*h > 0.0)) {
        return Err(Error::Precondition("step sizes must be positive".into()));
    }
    let (reference, reference_kind) = reference_energy(template, target)?;
    let bracket = (
        (target - SWEEP_BRACKET_HALF_WIDTH).max(1e-3),
        target + SWEEP_BRACKET_HALF_WIDTH,
    );
    let jobs: Vec<(MethodId, f64)> = methods
        .iter()
        .flat_map(|&m| h_values.iter().map(move |&h| (m, h)))
        .collect();
    let results: Vec<(MethodId, EfficiencyPoint)> = jobs
        .par_iter()
        .map(|&(m, h)| {
            let p = RadialProblem { h, ..*template };
            let r = resonance(m, &p, bracket, SWEEP_TOLERANCE)?;
            let signed_err = r.energy - reference;
            Ok((
                m,
                EfficiencyPoint {
                    n: (template.x_max / h).round() as u64,
                    h,
                    nfe: r.nfe(counting),
                    energy: r.energy,
                    err: signed_err.abs(),
                    signed_err,
                },
            ))
        })
        .collect::<Result<_>>()?;

    let mut curves = BTreeMap::new();
    for &m in methods {
        let mut points: Vec<EfficiencyPoint> = results
            .iter()
            .filter(|(rm, _)| *rm == m)
            .map(|(_, p)| *p)
            .collect();
        points.sort_by(|a, b| a.nfe.cmp(&b.nfe).then(b.h.total_cmp(&a.h)));
        curves.insert(
            m,
            EfficiencyCurve {
                method: m,
                target,
                reference,
                reference_kind,
                counting,
                points,
            },
        );
    }
    Ok(curves)
}
