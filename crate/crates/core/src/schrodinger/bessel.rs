use crate::error::{Error, Result};

/// Riccati-Bessel pair `(S, C) = (z j_l(z), -z n_l(z))` at `z = kx`.
///
/// For `l = 0` this is `(sin z, cos z)`; higher orders come from the upward
/// recurrence `f_{l+1} = (2l + 1)/z f_l - f_{l-1}`, which is stable for the
/// asymptotic region `z > l` used in matching.
pub fn bessel_pair(l: u32, kx: f64) -> Result<(f64, f64)> {
    if !(kx > 0.0) || !kx.is_finite() {
        return Err(Error::Precondition(format!(
            "Riccati-Bessel functions need kx > 0, got {kx}"
        )));
    }
    let (sin, cos) = kx.sin_cos();
    let (mut s_prev, mut c_prev) = (sin, cos);
    if l == 0 {
        return Ok((s_prev, c_prev));
    }
    let (mut s, mut c) = (sin / kx - cos, cos / kx + sin);
    for n in 1..l {
        let f = (2 * n + 1) as f64 / kx;
        let s_next = f * s - s_prev;
        let c_next = f * c - c_prev;
        s_prev = s;
        c_prev = c;
        s = s_next;
        c = c_next;
    }
    Ok((s, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_zero() {
        let (s, c) = bessel_pair(0, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((s - 1.0).abs() < 1e-15 && c.abs() < 1e-15);
        let (s, c) = bessel_pair(0, std::f64::consts::PI).unwrap();
        assert!(s.abs() < 1e-15 && (c + 1.0).abs() < 1e-15);
    }

    #[test]
    fn order_one_closed_form() {
        let z: f64 = 2.3;
        let (s, c) = bessel_pair(1, z).unwrap();
        assert!((s - (z.sin() / z - z.cos())).abs() < 1e-15);
        assert!((c - (z.cos() / z + z.sin())).abs() < 1e-15);
    }

    #[test]
    fn zero_argument_is_rejected() {
        assert!(bessel_pair(0, 0.0).is_err());
        assert!(bessel_pair(3, -1.0).is_err());
    }
}
