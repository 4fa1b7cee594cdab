//! Stability of the family on the `(s, H)` plane, where `s = t h` is the
//! step-scaled frequency of the test equation `y'' = -t^2 y` and `H` is the
//! argument at which the coefficients are fitted.
//!
//! On the test equation the recurrence is `A1 y_{n+1} + A0 y_n + A1 y_{n-1} = 0`
//! with `A1 = 1 + s^2 b0 + s^4 b1 a0` and `A0 = c1 + s^2 b1 - 2 s^4 b1 a0`.
//! The two polynomials reported alongside the classification are
//! `P1 = A0 + 2 A1` and `P2 = A0 - 2 A1`; with `A1 > 0` the roots lie on the
//! unit circle exactly when `P1 >= 0` and `P2 <= 0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::methods::{coefficients, CharacteristicPair, CoefficientSet, MethodId};

/// Slack allowed on the root modulus before a cell counts as unstable.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// A local minimum of the periodicity margin below this value is a point where
/// the two roots meet on the unit circle.
pub const TOUCH_TOLERANCE: f64 = 1e-10;

fn pair_at(c: &CoefficientSet, s: f64) -> CharacteristicPair {
    let s2 = s * s;
    let s4 = s2 * s2;
    CharacteristicPair {
        outer: 1.0 + s2 * c.b0 + s4 * c.b1 * c.a0,
        central: c.c1 + s2 * c.b1 - 2.0 * s4 * c.b1 * c.a0,
    }
}

/// `(P1, P2)` at `(H, s)`, coefficients evaluated at `H`.
pub fn stability_polynomials(method: MethodId, h_arg: f64, s: f64) -> Result<(f64, f64)> {
    let c = coefficients(method, h_arg)?;
    let p = pair_at(&c, s);
    Ok((p.central + 2.0 * p.outer, p.central - 2.0 * p.outer))
}

/// Classification of one `(s, H)` point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub stable: bool,
    /// NaN when the coefficients could not be evaluated.
    pub p1: f64,
    pub p2: f64,
    /// The coefficients have a pole at this `H`.
    pub pole: bool,
}

/// Root-condition classification: stable when both roots of
/// `A1 l^2 + A0 l + A1` have modulus at most `1 + ROOT_TOLERANCE`.
pub fn classify(method: MethodId, h_arg: f64, s: f64) -> Cell {
    let c = match coefficients(method, h_arg) {
        Ok(c) => c,
        Err(_) => {
            return Cell {
                stable: false,
                p1: f64::NAN,
                p2: f64::NAN,
                pole: true,
            }
        }
    };
    let p = pair_at(&c, s);
    let stable = p
        .roots()
        .is_some_and(|r| r.max_modulus() <= 1.0 + ROOT_TOLERANCE);
    Cell {
        stable,
        p1: p.central + 2.0 * p.outer,
        p2: p.central - 2.0 * p.outer,
        pole: false,
    }
}

/// `1 - (A0 / (2 A1))^2` on the diagonal `H = s`: positive while the roots are
/// a distinct conjugate pair, zero where they coincide, negative once they are
/// real and apart. `-inf` at poles.
fn diagonal_margin(method: MethodId, s: f64) -> f64 {
    match coefficients(method, s) {
        Ok(c) => {
            let p = pair_at(&c, s);
            if p.outer == 0.0 || !p.outer.is_finite() || !p.central.is_finite() {
                return f64::NEG_INFINITY;
            }
            let half = p.central / (2.0 * p.outer);
            1.0 - half * half
        }
        Err(_) => f64::NEG_INFINITY,
    }
}

/// Why the diagonal interval of periodicity ends where it does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagonalEnd {
    /// The roots meet on the unit circle (a double root).
    DoubleRoot,
    /// A sampled point beyond the end is unstable.
    Unstable,
    /// Every sampled diagonal point is stable.
    NotReached,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagonalInterval {
    pub s_star: f64,
    pub end: DiagonalEnd,
}

impl DiagonalInterval {
    /// The interval of periodicity `(0, s*^2)` in `s^2`.
    pub fn interval(&self) -> (f64, f64) {
        (0.0, self.s_star * self.s_star)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityMap {
    pub method: MethodId,
    pub s_grid: Vec<f64>,
    pub h_grid: Vec<f64>,
    /// `stable[i][j]` classifies `(s_grid[i], h_grid[j])`.
    pub stable: Vec<Vec<bool>>,
    pub p1: Vec<Vec<f64>>,
    pub p2: Vec<Vec<f64>>,
    pub pole: Vec<Vec<bool>>,
    pub diagonal: DiagonalInterval,
}

fn grid(max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| max * i as f64 / (n - 1) as f64).collect()
}

/// Classifies an `n x n` grid over `[0, s_max] x [0, h_max]` and measures the
/// interval of periodicity along `H = s`.
pub fn scan_plane(method: MethodId, s_max: f64, h_max: f64, n: usize) -> Result<StabilityMap> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "grid needs at least 2 points, got {n}"
        )));
    }
    if !(s_max > 0.0 && h_max > 0.0 && s_max.is_finite() && h_max.is_finite()) {
        return Err(Error::Precondition(format!(
            "grid extents must be positive, got s_max = {s_max}, H_max = {h_max}"
        )));
    }
    let s_grid = grid(s_max, n);
    let h_grid = grid(h_max, n);
    let rows: Vec<Vec<Cell>> = s_grid
        .par_iter()
        .map(|&s| h_grid.iter().map(|&h| classify(method, h, s)).collect())
        .collect();

    let pick = |f: fn(&Cell) -> f64| -> Vec<Vec<f64>> {
        rows.iter().map(|r| r.iter().map(f).collect()).collect()
    };
    let stable = rows
        .iter()
        .map(|r| r.iter().map(|c| c.stable).collect())
        .collect();
    let pole = rows
        .iter()
        .map(|r| r.iter().map(|c| c.pole).collect())
        .collect();
    let p1 = pick(|c| c.p1);
    let p2 = pick(|c| c.p2);

    Ok(StabilityMap {
        method,
        diagonal: diagonal_interval(method, s_max.min(h_max), n),
        s_grid,
        h_grid,
        stable,
        p1,
        p2,
        pole,
    })
}

/// Walks `n` samples of the diagonal `H = s` over `[0, d_max]`. The interval
/// ends at the first sample that is unstable (refined by bisection between it
/// and its stable predecessor) or at the first interior point where the roots
/// touch (a local minimum of the margin refined to within
/// [`TOUCH_TOLERANCE`] of zero), whichever comes first.
pub fn diagonal_interval(method: MethodId, d_max: f64, n: usize) -> DiagonalInterval {
    let ds = grid(d_max, n.max(2));
    let stable: Vec<bool> = ds.iter().map(|&d| classify(method, d, d).stable).collect();
    let margin: Vec<f64> = ds.iter().map(|&d| diagonal_margin(method, d)).collect();

    for k in 1..ds.len() {
        if !stable[k] {
            let mut lo = ds[k - 1];
            let mut hi = ds[k];
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if classify(method, mid, mid).stable {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return DiagonalInterval {
                s_star: 0.5 * (lo + hi),
                end: DiagonalEnd::Unstable,
            };
        }
        let interior = k + 1 < ds.len() && stable[k + 1];
        if interior && margin[k] <= margin[k - 1] && margin[k] <= margin[k + 1] {
            let (at, value) = minimise(|s| diagonal_margin(method, s), ds[k - 1], ds[k + 1]);
            if value <= TOUCH_TOLERANCE {
                return DiagonalInterval {
                    s_star: at,
                    end: DiagonalEnd::DoubleRoot,
                };
            }
        }
    }
    DiagonalInterval {
        s_star: d_max,
        end: DiagonalEnd::NotReached,
    }
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
fn minimise(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if b - a <= 1e-14 * b.abs().max(1.0) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
