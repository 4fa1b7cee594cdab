use thiserror::Error;

use crate::methods::MethodId;

/// Errors raised by the integrators, the scattering solver and the analysis harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A coefficient or phase-lag expression was evaluated too close to a pole.
    #[error("{method} evaluated too close to a pole at H = {h_arg} ({what})")]
    Domain {
        method: MethodId,
        h_arg: f64,
        what: &'static str,
    },

    /// The implicit bracket of the linear step vanished.
    #[error("singular step at x = {x} (leading bracket {bracket:e})")]
    SingularStep { x: f64, bracket: f64 },

    /// The two matching points cannot separate the regular and irregular solutions.
    #[error("degenerate phase-shift match at x1 = {x1}, x2 = {x2}")]
    DegenerateMatch { x1: f64, x2: f64 },

    /// No crossing of the resonance condition inside the requested energy range.
    #[error("no resonance crossing in [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    /// A least-squares slope could not be determined with enough confidence.
    #[error("fit failed: {0}")]
    Fit(String),

    /// An argument violated an operation's precondition.
    #[error("invalid argument: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
