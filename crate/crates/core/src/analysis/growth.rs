//! The leading truncation error written as a polynomial in `G = Vc - E` for a
//! problem `y'' = (g(x) + G) y`, where `g = V - Vc`. The coefficients depend
//! on `g`, its derivatives and `y`, `y'` at one point; the polynomials below
//! are the expansions of the fitted methods' truncation errors (each
//! multiplies `h^8`).

use serde::{Deserialize, Serialize};

use super::log_log_slope;
use crate::error::{Error, Result};
use crate::methods::MethodId;

/// Values of `g, g', ..., g^(6)` and of `y`, `y'` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileJet {
    pub g: [f64; 7],
    pub y: f64,
    pub dy: f64,
}

impl ProfileJet {
    /// `g(x) = exp(-x)`, `y(x) = sin(2x)`.
    pub fn exp_sine(x: f64) -> Self {
        let e = (-x).exp();
        let mut g = [0.0; 7];
        for (k, v) in g.iter_mut().enumerate() {
            *v = if k % 2 == 0 { e } else { -e };
        }
        ProfileJet {
            g,
            y: (2.0 * x).sin(),
            dy: 2.0 * (2.0 * x).cos(),
        }
    }
}

/// The `G^0` term, shared (up to sign) by every method.
fn common_term(j: &ProfileJet) -> f64 {
    let [g, g1, g2, g3, g4, g5, g6] = j.g;
    let (y, dy) = (j.y, j.dy);
    -g6 * y / 6048.0
        - g5 * dy / 1008.0
        - g * y * g4 / 378.0
        - 5.0 * g2 * g2 * y / 2016.0
        - 13.0 * g1 * y * g3 / 3024.0
        - g * dy * g3 / 252.0
        - g * g * dy * g1 / 504.0
        - g1 * dy * g2 / 126.0
        - 11.0 * g * g * y * g2 / 3024.0
        - g * y * g1 * g1 / 216.0
        - g.powi(4) * y / 6048.0
}

/// Coefficients of `G^0 .. G^3` of the truncation error in `G`.
pub fn lte_in_g(method: MethodId, j: &ProfileJet) -> Result<[f64; 4]> {
    let [g, g1, g2, g3, g4, _, _] = j.g;
    let (y, dy) = (j.y, j.dy);
    let free = common_term(j);
    let c = match method {
        MethodId::Numerov => {
            return Err(Error::Precondition(
                "the truncation-error polynomial in G is defined for the fitted methods".into(),
            ))
        }
        MethodId::Pl1 => [
            free,
            -5.0 * g4 * y / 2016.0
                - 5.0 * g3 * dy / 1512.0
                - g * dy * g1 / 336.0
                - 37.0 * g * y * g2 / 6048.0
                - g1 * g1 * y / 252.0
                - g.powi(3) * y / 2016.0,
            -5.0 * g2 * y / 2016.0 - g1 * dy / 1008.0 - g * g * y / 2016.0,
            -g * y / 6048.0,
        ],
        MethodId::Pl2 => [
            -free,
            11.0 * g4 * y / 4536.0
                + g3 * dy / 324.0
                + g * dy * g1 / 378.0
                + 13.0 * g * y * g2 / 2268.0
                + 17.0 * g1 * g1 * y / 4536.0
                + g.powi(3) * y / 2268.0,
            19.0 * g2 * y / 9072.0 + g1 * dy / 1512.0 + g * g * y / 3024.0,
            0.0,
        ],
        MethodId::Pl3 => [
            -free,
            g4 * y / 432.0
                + g3 * dy / 378.0
                + g * dy * g1 / 504.0
                + 5.0 * g * y * g2 / 1008.0
                + 5.0 * g1 * g1 * y / 1512.0
                + g.powi(3) * y / 3024.0,
            g2 * y / 756.0,
            0.0,
        ],
        MethodId::Pl4 => [
            -free,
            g4 * y / 504.0 + g3 * dy / 756.0 + g * y * g2 / 378.0 + g1 * g1 * y / 504.0,
            0.0,
            0.0,
        ],
    };
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub method: MethodId,
    /// Slope of `log |LTE(G)|` against `log |G|`.
    pub fitted_power: f64,
    /// Standard error of the fitted slope.
    pub slope_stderr: f64,
    /// Highest power of `G` with a non-zero coefficient for this profile.
    pub leading_power: u32,
    pub leading_coefficient: f64,
}

/// Fits the growth of the truncation error in `G` over `g_values`.
pub fn asymptotic_growth(
    method: MethodId,
    jet: &ProfileJet,
    g_values: &[f64],
) -> Result<GrowthReport> {
    if g_values.len() < 3 {
        return Err(Error::Precondition(format!(
            "need at least 3 values of G, got {}",
            g_values.len()
        )));
    }
    let mags: Vec<f64> = g_values.iter().map(|g| g.abs()).collect();
    let lo = mags.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = mags.iter().cloned().fold(0.0, f64::max);
    if !(lo > 0.0 && hi / lo >= 100.0) {
        return Err(Error::Precondition(format!(
            "values of |G| must span at least two decades, got [{lo}, {hi}]"
        )));
    }
    let c = lte_in_g(method, jet)?;
    let values: Vec<f64> = g_values
        .iter()
        .map(|&g| ((c[3] * g + c[2]) * g + c[1]) * g + c[0])
        .collect();
    let (slope, se) = log_log_slope(g_values, &values)?;
    let (leading_power, leading_coefficient) = (0..4)
        .rev()
        .find(|&k| c[k] != 0.0)
        .map(|k| (k as u32, c[k]))
        .unwrap_or((0, 0.0));
    Ok(GrowthReport {
        method,
        fitted_power: slope,
        slope_stderr: se,
        leading_power,
        leading_coefficient,
    })
}

/// `count` values of `G` spaced evenly in `log |G|` between `lo` and `hi`.
pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_of_exponential() {
        let j = ProfileJet::exp_sine(0.0);
        assert_eq!(j.g, [1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0]);
        assert_eq!((j.y, j.dy), (0.0, 2.0));
    }

    #[test]
    fn span_is_checked() {
        let j = ProfileJet::exp_sine(1.0);
        assert!(asymptotic_growth(MethodId::Pl1, &j, &[10.0, 20.0, 50.0]).is_err());
        assert!(lte_in_g(MethodId::Numerov, &j).is_err());
    }
}
