//! First three derivatives of the phase-lag with respect to the explicit H
//! occurrences, the coefficients (a0, b0, b1, c1) held at the values they take
//! at the evaluation point. These are the conditions the fitted coefficients
//! were solved from, so PLn annihilates orders 1..n-1.

use super::{coefficients, CoefficientSet, MethodId, DENOMINATOR_FLOOR};
use crate::error::{Error, Result};

pub fn phase_lag_derivative(method: MethodId, h_arg: f64, order: u32) -> Result<f64> {
    let coeffs = coefficients(method, h_arg)?;
    phase_lag_derivative_frozen(&coeffs, h_arg, order)
}

/// Derivative of order 1, 2 or 3 for an explicit coefficient set.
pub fn phase_lag_derivative_frozen(coeffs: &CoefficientSet, h_arg: f64, order: u32) -> Result<f64> {
    let CoefficientSet { a0, b0, b1, c1, .. } = *coeffs;
    let h = h_arg;
    let (h2, h3) = (h * h, h * h * h);
    let h4 = h2 * h2;
    let (sin, cos) = h.sin_cos();

    // A1(H) and its derivatives
    let t = 1.0 + h2 * b0 + h4 * b1 * a0;
    let t1 = 2.0 * h * b0 + 4.0 * h3 * b1 * a0;
    let t2 = 2.0 * b0 + 12.0 * b1 * a0 * h2;
    // numerator 2 A1 cos H + A0 and its derivatives
    let n = 2.0 * t * cos + c1 + h2 * b1 - 2.0 * h4 * b1 * a0;
    let n1 = 2.0 * t1 * cos - 2.0 * t * sin + 2.0 * h * b1 - 8.0 * h3 * b1 * a0;

    if !(t.abs() >= DENOMINATOR_FLOOR) {
        return Err(Error::Domain {
            method: coeffs.method,
            h_arg,
            what: "A1(H)",
        });
    }

    let value = match order {
        1 => 0.5 * n1 / t - 0.5 * n * t1 / (t * t),
        2 => {
            let n2 =
                2.0 * t2 * cos - 4.0 * t1 * sin - 2.0 * t * cos + 2.0 * b1 - 24.0 * b1 * a0 * h2;
            0.5 * n2 / t - n1 * t1 / (t * t) + n * t1 * t1 / (t * t * t) - 0.5 * n * t2 / (t * t)
        }
        3 => {
            let n2 =
                2.0 * t2 * cos - 4.0 * t1 * sin - 2.0 * t * cos + 2.0 * b1 - 24.0 * b1 * a0 * h2;
            let t9 = 48.0 * b1 * a0 * h * cos - 6.0 * t2 * sin;
            let n3 = t9 - 6.0 * t1 * cos + 2.0 * t * sin - 48.0 * b1 * a0 * h;
            let tt = t * t;
            0.5 * n3 / t - 1.5 * n2 * t1 / tt + 3.0 * n1 * t1 * t1 / (tt * t)
                - 1.5 * n1 * t2 / tt
                - 3.0 * n * t1 * t1 * t1 / (tt * tt)
                + 3.0 * n * t1 * t2 / (tt * t)
                - 12.0 * n * b1 * a0 * h / tt
        }
        other => {
            return Err(Error::Precondition(format!(
                "phase-lag derivative order must be 1, 2 or 3, got {other}"
            )))
        }
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pl2_first_derivative_vanishes() {
        let d = phase_lag_derivative(MethodId::Pl2, 0.9, 1).unwrap();
        assert!(d.abs() < 1e-12, "{d:e}");
    }

    #[test]
    fn pl4_third_derivative_vanishes() {
        let d = phase_lag_derivative(MethodId::Pl4, 1.2, 3).unwrap();
        assert!(d.abs() < 1e-10, "{d:e}");
    }

    #[test]
    fn pl1_first_derivative_does_not() {
        let d = phase_lag_derivative(MethodId::Pl1, 0.5, 1).unwrap();
        assert!(d.abs() > 1e-6);
    }

    #[test]
    fn order_out_of_range() {
        assert!(matches!(
            phase_lag_derivative(MethodId::Pl3, 0.5, 4),
            Err(Error::Precondition(_))
        ));
        assert!(phase_lag_derivative(MethodId::Pl3, 0.5, 0).is_err());
    }
}
