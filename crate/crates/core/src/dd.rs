//! Double-double arithmetic (an unevaluated sum `hi + lo` of two f64 values).
//!
//! The closed-form coefficient formulas cancel catastrophically as H -> 0: the
//! numerators and denominators of the PL4 expressions vanish like H^9 while
//! their individual terms stay O(1). Evaluating them with ~32 significant
//! digits keeps them usable down to H ~ 1e-2 and lets the closed forms be
//! compared with the Taylor expansions on an overlapping range.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

// pi/2 split into three non-overlapping doubles.
const HALF_PI: [f64; 3] = [
    std::f64::consts::FRAC_PI_2,
    6.123_233_995_736_766e-17,
    -1.497_384_904_859_169_8e-33,
];

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn powi(self, n: u32) -> Self {
        (0..n).fold(Dd::ONE, |acc, _| acc * self)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Sine and cosine to double-double accuracy.
    ///
    /// Reduces by multiples of pi/2 and sums the Taylor series on [-pi/4, pi/4].
    /// Intended for moderate arguments (|x| up to a few thousand).
    pub fn sin_cos(self) -> (Dd, Dd) {
        let k = (self.hi / HALF_PI[0]).round();
        let mut r = self;
        for part in HALF_PI {
            let (p, e) = two_prod(k, part);
            r = r - Dd { hi: p, lo: e };
        }

        let r2 = r.sqr();
        let mut sin = r;
        let mut term = r;
        let mut n = 1.0;
        loop {
            term = -(term * r2) / ((n + 1.0) * (n + 2.0));
            sin = sin + term;
            n += 2.0;
            if term.hi.abs() <= 1e-34 * sin.hi.abs() || n > 60.0 {
                break;
            }
        }

        let mut cos = Dd::ONE;
        let mut term = Dd::ONE;
        let mut n = 0.0;
        loop {
            term = -(term * r2) / ((n + 1.0) * (n + 2.0));
            cos = cos + term;
            n += 2.0;
            if term.hi.abs() <= 1e-34 || n > 60.0 {
                break;
            }
        }

        match (k as i64).rem_euclid(4) {
            0 => (sin, cos),
            1 => (cos, -sin),
            2 => (-sin, -cos),
            _ => (-cos, sin),
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + q3
    }
}

macro_rules! mixed_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<f64> for Dd {
            type Output = Dd;
            #[inline]
            fn $f(self, b: f64) -> Dd {
                $tr::$f(self, Dd::new(b))
            }
        }
        impl $tr<Dd> for f64 {
            type Output = Dd;
            #[inline]
            fn $f(self, b: Dd) -> Dd {
                $tr::$f(Dd::new(self), b)
            }
        }
    )*};
}

mixed_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_carry_the_rounding_error() {
        let third = Dd::ONE / 3.0;
        let back = third * 3.0 - 1.0;
        assert!(back.to_f64().abs() < 1e-31);
        assert!((third.hi - 1.0 / 3.0).abs() < 1e-16);
        assert!(third.lo != 0.0);
    }

    #[test]
    fn cancellation_keeps_low_word() {
        let a = Dd::new(1.0) + Dd::new(1e-20);
        let d = a - 1.0;
        assert!((d.to_f64() - 1e-20).abs() < 1e-35);
    }

    #[test]
    fn sin_cos_satisfy_pythagoras_and_match_f64() {
        for &x in &[
            1e-3, 0.02, 0.1, 0.7, 1.0, 2.0, 3.0, 3.3, 6.0, 9.5, 30.0, -1.3,
        ] {
            let (s, c) = Dd::new(x).sin_cos();
            let one = s * s + c * c - 1.0;
            assert!(one.to_f64().abs() < 1e-30, "x = {x}: {:e}", one.to_f64());
            assert!((s.to_f64() - x.sin()).abs() < 2e-16);
            assert!((c.to_f64() - x.cos()).abs() < 2e-16);
        }
    }

    #[test]
    fn one_minus_cos_small_argument() {
        // 1 - cos(x) = 2 sin^2(x/2); both computed in double-double.
        let x = Dd::new(0.02);
        let (_, c) = x.sin_cos();
        let (s_half, _) = (x / 2.0).sin_cos();
        let lhs = 1.0 - c;
        let rhs = 2.0 * s_half.sqr();
        assert!(((lhs - rhs) / rhs).to_f64().abs() < 1e-28);
    }
}
