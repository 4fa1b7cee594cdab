//! Two-step hybrid Numerov-type integrators whose coefficients are fitted to
//! annihilate the phase-lag and its first derivatives, together with the radial
//! Schrodinger resonance solver, stability scans and convergence/efficiency
//! harnesses built on them.

// NaN must fail the checks, which the negated comparisons do by design
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod dd;
pub mod error;
pub mod integrator;
pub mod methods;
pub mod schrodinger;
pub mod stability;

pub use error::{Error, Result};
pub use integrator::{
    integrate, step, ConstantFrequency, FrequencyProfile, LinearField, NfeCounting, Trajectory,
};
pub use methods::{coefficients, phase_lag, phase_lag_derivative, CoefficientSet, MethodId};
