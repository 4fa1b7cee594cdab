use serde::{Deserialize, Serialize};

use crate::methods::MethodId;

/// Even derivatives of the solution at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LteDerivatives {
    pub y: f64,
    pub y2: f64,
    pub y4: f64,
    pub y6: f64,
    pub y8: f64,
}

impl LteDerivatives {
    /// Derivatives of `cos(omega x)` (or any solution of `y'' = -omega^2 y`
    /// with value `y`): `y^(2k) = (-omega^2)^k y`.
    pub fn harmonic(y: f64, omega: f64) -> Self {
        let w = -omega * omega;
        LteDerivatives {
            y,
            y2: w * y,
            y4: w * w * y,
            y6: w * w * w * y,
            y8: w * w * w * w * y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LtePrediction {
    pub method: MethodId,
    pub h: f64,
    pub value: f64,
}

/// Leading local truncation error, defined as the residual left when the
/// exact solution is substituted into the scheme (exact minus computed, up to
/// the `O(h^2)` leading bracket).
///
/// The fitted methods are eighth order in the residual; Numerov's method is
/// sixth order, `-h^6 y^(6) / 240`.
pub fn lte(method: MethodId, d: &LteDerivatives, omega: f64, h: f64) -> LtePrediction {
    let w2 = omega * omega;
    let w4 = w2 * w2;
    let w6 = w4 * w2;
    let w8 = w4 * w4;
    let h2 = h * h;
    let h6 = h2 * h2 * h2;
    let h8 = h6 * h2;
    let value = match method {
        MethodId::Numerov => -h6 * d.y6 / 240.0,
        MethodId::Pl1 => h8 / 6048.0 * (d.y8 + w2 * d.y6),
        MethodId::Pl2 => h8 / 18144.0 * (3.0 * d.y8 + 4.0 * w2 * d.y6 + w8 * d.y),
        MethodId::Pl3 => h8 / 6048.0 * (d.y8 + 2.0 * w2 * d.y6 - 2.0 * w6 * d.y2 - w8 * d.y),
        MethodId::Pl4 => {
            h8 / 6048.0 * (d.y8 + 4.0 * w2 * d.y6 + 6.0 * w4 * d.y4 + 4.0 * w6 * d.y2 + w8 * d.y)
        }
    };
    LtePrediction { method, h, value }
}
