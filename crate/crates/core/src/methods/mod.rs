//! The two-step hybrid Numerov-type family
//!
//! ```text
//! ybar_n  = y_n - a0 h^2 (y''_{n+1} - 2 y''_n + y''_{n-1})
//! y_{n+1} + c1 y_n + y_{n-1} = h^2 [ b0 (y''_{n+1} + y''_{n-1}) + b1 ybar''_n ]
//! ```
//!
//! and the frequency-dependent coefficients of its members. `PLn` makes the
//! phase-lag and its first `n - 1` derivatives vanish at `H = omega h`;
//! Numerov's method (a0 = 0, b0 = 1/12, b1 = 5/6, c1 = -2) is the
//! constant-coefficient baseline.

mod closed;
mod derivative;
mod series;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{Error, Result};

pub use derivative::{phase_lag_derivative, phase_lag_derivative_frozen};

/// Below this H the Taylor expansions replace the closed forms.
pub const H_SWITCH: f64 = 0.1;

/// A closed form is rejected when `|denominator| <= DENOMINATOR_FLOOR * |numerator|`.
/// The same floor (absolute) guards the `A1(H)` divisions in the phase-lag.
pub const DENOMINATOR_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodId {
    Numerov,
    Pl1,
    Pl2,
    Pl3,
    Pl4,
}

impl MethodId {
    pub const ALL: [MethodId; 5] = [
        MethodId::Numerov,
        MethodId::Pl1,
        MethodId::Pl2,
        MethodId::Pl3,
        MethodId::Pl4,
    ];

    /// The phase-fitted members, in order of increasing fitting depth.
    pub const FAMILY: [MethodId; 4] = [MethodId::Pl1, MethodId::Pl2, MethodId::Pl3, MethodId::Pl4];

    pub fn name(self) -> &'static str {
        match self {
            MethodId::Numerov => "numerov",
            MethodId::Pl1 => "pl1",
            MethodId::Pl2 => "pl2",
            MethodId::Pl3 => "pl3",
            MethodId::Pl4 => "pl4",
        }
    }

    /// Number of phase-lag derivatives forced to zero (in addition to the
    /// phase-lag itself). `None` for Numerov, which is not fitted at all.
    pub fn vanishing_derivatives(self) -> Option<u32> {
        match self {
            MethodId::Numerov => None,
            MethodId::Pl1 => Some(0),
            MethodId::Pl2 => Some(1),
            MethodId::Pl3 => Some(2),
            MethodId::Pl4 => Some(3),
        }
    }

    pub fn is_fitted(self) -> bool {
        self != MethodId::Numerov
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "numerov" => Ok(MethodId::Numerov),
            "pl1" => Ok(MethodId::Pl1),
            "pl2" => Ok(MethodId::Pl2),
            "pl3" => Ok(MethodId::Pl3),
            "pl4" => Ok(MethodId::Pl4),
            other => Err(format!(
                "unknown method `{other}` (expected numerov, pl1, pl2, pl3 or pl4)"
            )),
        }
    }
}

/// The coefficients `(a0, b0, b1, c1)` of one family member at `H = h_arg`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub method: MethodId,
    pub a0: f64,
    pub b0: f64,
    pub b1: f64,
    pub c1: f64,
    /// `c1 + 2`, kept separately: it is `O(H^8)` for the fitted methods and
    /// would be lost to rounding if recovered from `c1`.
    pub c1_excess: f64,
    pub h_arg: f64,
}

const B0: f64 = 1.0 / 12.0;
const B1: f64 = 5.0 / 6.0;
const C1: f64 = -2.0;

impl CoefficientSet {
    pub fn numerov(h_arg: f64) -> Self {
        CoefficientSet {
            method: MethodId::Numerov,
            a0: 0.0,
            b0: B0,
            b1: B1,
            c1: C1,
            c1_excess: 0.0,
            h_arg,
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.a0, self.b0, self.b1, self.c1]
    }
}

/// Coefficients of `method` at `H`, switching to the Taylor expansions below
/// [`H_SWITCH`].
pub fn coefficients(method: MethodId, h_arg: f64) -> Result<CoefficientSet> {
    if !h_arg.is_finite() || h_arg < 0.0 {
        return Err(Error::Precondition(format!(
            "H must be finite and non-negative, got {h_arg}"
        )));
    }
    if method == MethodId::Numerov {
        return Ok(CoefficientSet::numerov(h_arg));
    }
    if h_arg < H_SWITCH {
        Ok(series_coefficients(method, h_arg))
    } else {
        closed_form_coefficients(method, h_arg)
    }
}

/// Coefficients from the Taylor expansions (terms through H^16), regardless of H.
pub fn series_coefficients(method: MethodId, h_arg: f64) -> CoefficientSet {
    let h = h_arg;
    let c1_table = match method {
        MethodId::Numerov => return CoefficientSet::numerov(h_arg),
        MethodId::Pl1 => None,
        MethodId::Pl2 => Some(&series::PL2_C1),
        MethodId::Pl3 => Some(&series::PL3_C1),
        MethodId::Pl4 => Some(&series::PL4_C1),
    };
    let (a0, b0, b1) = match method {
        MethodId::Numerov | MethodId::Pl1 => (series::eval(&series::PL1_A0, h), B0, B1),
        MethodId::Pl2 => (series::eval(&series::PL2_A0, h), B0, B1),
        MethodId::Pl3 => (
            series::eval(&series::PL3_A0, h),
            B0,
            series::eval(&series::PL3_B1, h),
        ),
        MethodId::Pl4 => (
            series::eval(&series::PL4_A0, h),
            series::eval(&series::PL4_B0, h),
            series::eval(&series::PL4_B1, h),
        ),
    };
    let (c1, c1_excess) = match c1_table {
        Some(t) => (series::eval(t, h), series::eval_excess(t, h)),
        None => (C1, 0.0),
    };
    CoefficientSet {
        method,
        a0,
        b0,
        b1,
        c1,
        c1_excess,
        h_arg,
    }
}

/// Coefficients from the closed-form expressions, regardless of H.
///
/// Fails with [`Error::Domain`] near a pole (and at H = 0, where every closed
/// form is 0/0).
pub fn closed_form_coefficients(method: MethodId, h_arg: f64) -> Result<CoefficientSet> {
    let resolve_dd = |r: closed::Ratio, what: &'static str| -> Result<Dd> {
        let den = r.den.abs().to_f64();
        let num = r.num.abs().to_f64();
        if !(den > DENOMINATOR_FLOOR * num) || !r.num.is_finite() {
            return Err(Error::Domain {
                method,
                h_arg,
                what,
            });
        }
        Ok(r.num / r.den)
    };
    let resolve = |r: closed::Ratio, what: &'static str| resolve_dd(r, what).map(Dd::to_f64);
    let split_c1 = |r: closed::Ratio| -> Result<(f64, f64)> {
        let c1 = resolve_dd(r, "c1")?;
        Ok((c1.to_f64(), (c1 + 2.0).to_f64()))
    };
    let h = h_arg;
    let (a0, b0, b1, (c1, c1_excess)) = match method {
        MethodId::Numerov => return Ok(CoefficientSet::numerov(h_arg)),
        MethodId::Pl1 => (resolve(closed::pl1_a0(h), "a0")?, B0, B1, (C1, 0.0)),
        MethodId::Pl2 => {
            let (a0, c1) = closed::pl2(h);
            (resolve(a0, "a0")?, B0, B1, split_c1(c1)?)
        }
        MethodId::Pl3 => {
            let (a0, c1, b1) = closed::pl3(h);
            (resolve(a0, "a0")?, B0, resolve(b1, "b1")?, split_c1(c1)?)
        }
        MethodId::Pl4 => {
            let (a0, c1, b0, b1) = closed::pl4(h);
            (
                resolve(a0, "a0")?,
                resolve(b0, "b0")?,
                resolve(b1, "b1")?,
                split_c1(c1)?,
            )
        }
    };
    Ok(CoefficientSet {
        method,
        a0,
        b0,
        b1,
        c1,
        c1_excess,
        h_arg,
    })
}

/// `A0(H)` and `A1(H)` of the characteristic equation `A1 l^2 + A0 l + A1 = 0`
/// obtained on the test equation `y'' = -omega^2 y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicPair {
    /// A0(H), multiplies y_n.
    pub central: f64,
    /// A1(H), multiplies y_{n+1} and y_{n-1}.
    pub outer: f64,
}

/// Roots of `A1 l^2 + A0 l + A1 = 0`; their product is always 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CharacteristicRoots {
    Conjugate { re: f64, im: f64 },
    Real(f64, f64),
}

impl CharacteristicRoots {
    pub fn max_modulus(&self) -> f64 {
        match *self {
            CharacteristicRoots::Conjugate { re, im } => re.hypot(im),
            CharacteristicRoots::Real(a, b) => a.abs().max(b.abs()),
        }
    }
}

impl CharacteristicPair {
    /// Returns `None` when `A1 = 0` (the equation degenerates).
    pub fn roots(&self) -> Option<CharacteristicRoots> {
        let (a, b) = (self.outer, self.central);
        if a == 0.0 || !a.is_finite() || !b.is_finite() {
            return None;
        }
        let half = -b / (2.0 * a);
        let disc = half * half - 1.0;
        if disc <= 0.0 {
            Some(CharacteristicRoots::Conjugate {
                re: half,
                im: (-disc).sqrt(),
            })
        } else {
            // larger-magnitude root first, the other from the unit product
            let big = half + half.signum() * disc.sqrt();
            Some(CharacteristicRoots::Real(big, 1.0 / big))
        }
    }
}

pub fn characteristic_pair(coeffs: &CoefficientSet, h_arg: f64) -> CharacteristicPair {
    let h2 = h_arg * h_arg;
    let h4 = h2 * h2;
    let CoefficientSet { a0, b0, b1, c1, .. } = *coeffs;
    CharacteristicPair {
        outer: 1.0 + h2 * b0 + h4 * b1 * a0,
        central: c1 + h2 * b1 - 2.0 * h4 * b1 * a0,
    }
}

/// Phase-lag of a two-step symmetric method: `(2 A1 cos H + A0) / (2 A1)`.
pub fn phase_lag(coeffs: &CoefficientSet, h_arg: f64) -> Result<f64> {
    let pair = characteristic_pair(coeffs, h_arg);
    if !(pair.outer.abs() >= DENOMINATOR_FLOOR) {
        return Err(Error::Domain {
            method: coeffs.method,
            h_arg,
            what: "A1(H)",
        });
    }
    Ok((2.0 * pair.outer * h_arg.cos() + pair.central) / (2.0 * pair.outer))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerov_is_constant() {
        let c = coefficients(MethodId::Numerov, 0.7).unwrap();
        assert_eq!(c.as_array(), [0.0, 1.0 / 12.0, 5.0 / 6.0, -2.0]);
    }

    #[test]
    fn pl1_series_limit() {
        let c = coefficients(MethodId::Pl1, 0.0).unwrap();
        assert_eq!(c.a0, 1.0 / 200.0);
        assert_eq!((c.b0, c.b1, c.c1), (B0, B1, C1));
    }

    #[test]
    fn fixed_coefficients_per_method() {
        for h in [0.05, 0.5, 1.5] {
            let p1 = coefficients(MethodId::Pl1, h).unwrap();
            assert_eq!((p1.b0, p1.b1, p1.c1), (B0, B1, C1));
            let p2 = coefficients(MethodId::Pl2, h).unwrap();
            assert_eq!((p2.b0, p2.b1), (B0, B1));
            let p3 = coefficients(MethodId::Pl3, h).unwrap();
            assert_eq!(p3.b0, B0);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(
            coefficients(MethodId::Pl2, -0.1),
            Err(Error::Precondition(_))
        ));
        assert!(coefficients(MethodId::Pl2, f64::NAN).is_err());
    }

    #[test]
    fn closed_forms_have_poles() {
        // PL1: 10 H^4 (cos H - 1) vanishes at 2 pi.
        let err = closed_form_coefficients(MethodId::Pl1, 2.0 * std::f64::consts::PI).unwrap_err();
        assert!(matches!(err, Error::Domain { what: "a0", .. }));
        // every closed form is 0/0 at the origin
        assert!(closed_form_coefficients(MethodId::Pl4, 0.0).is_err());
    }

    #[test]
    fn characteristic_pair_by_substitution() {
        let c = CoefficientSet {
            method: MethodId::Pl4,
            a0: 1.0,
            b0: 1.0,
            b1: 1.0,
            c1: 0.0,
            c1_excess: 2.0,
            h_arg: 1.0,
        };
        let p = characteristic_pair(&c, 1.0);
        assert_eq!((p.outer, p.central), (3.0, -1.0));

        let n = characteristic_pair(&CoefficientSet::numerov(0.0), 0.0);
        assert_eq!((n.outer, n.central), (1.0, -2.0));
    }

    #[test]
    fn roots_have_unit_product() {
        let p = CharacteristicPair {
            central: -3.0,
            outer: 1.0,
        };
        match p.roots().unwrap() {
            CharacteristicRoots::Real(a, b) => assert!((a * b - 1.0).abs() < 1e-15),
            other => panic!("expected real roots, got {other:?}"),
        }
        let q = CharacteristicPair {
            central: -1.0,
            outer: 1.0,
        };
        assert!((q.roots().unwrap().max_modulus() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn method_names_round_trip() {
        for m in MethodId::ALL {
            assert_eq!(m.name().parse::<MethodId>().unwrap(), m);
        }
        assert!("pl5".parse::<MethodId>().is_err());
    }
}
