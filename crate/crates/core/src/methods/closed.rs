//! Closed-form coefficient expressions, evaluated in double-double.
//!
//! Every coefficient is returned as an unreduced (numerator, denominator)
//! pair so the caller can detect poles before dividing.

use crate::dd::Dd;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Ratio {
    pub num: Dd,
    pub den: Dd,
}

impl Ratio {
    fn new(num: Dd, den: Dd) -> Self {
        Ratio { num, den }
    }
}

struct Trig {
    h: Dd,
    h2: Dd,
    h3: Dd,
    h4: Dd,
    s: Dd,
    c: Dd,
    c2: Dd,
}

impl Trig {
    fn at(h: f64) -> Self {
        let h = Dd::new(h);
        let (s, c) = h.sin_cos();
        let h2 = h.sqr();
        Trig {
            h,
            h2,
            h3: h2 * h,
            h4: h2.sqr(),
            s,
            c,
            c2: c.sqr(),
        }
    }
}

/// Phase-lag zero with b0 = 1/12, b1 = 5/6, c1 = -2.
pub(crate) fn pl1_a0(h: f64) -> Ratio {
    let Trig { h2, h4, c, .. } = Trig::at(h);
    let num = -12.0 * c - c * h2 + 12.0 - 5.0 * h2;
    let den = 10.0 * c * h4 - 10.0 * h4;
    Ratio::new(num, den)
}

/// Phase-lag and its first derivative zero with b0 = 1/12, b1 = 5/6.
pub(crate) fn pl2(h: f64) -> (Ratio, Ratio) {
    let Trig {
        h,
        h2,
        h3,
        h4,
        s,
        c,
        c2,
    } = Trig::at(h);
    let a0 = Ratio::new(
        -s * h2 + 10.0 * h + 2.0 * c * h - 12.0 * s,
        10.0 * s * h4 - 40.0 * c * h3 + 40.0 * h3,
    );
    let cos2 = 2.0 * c2 - 1.0;
    let c1 = Ratio::new(
        24.0 * cos2 + 24.0 - 48.0 * c + h2 * cos2 - 9.0 * h2 + 8.0 * c * h2
            - 6.0 * h3 * s
            - 12.0 * s * h,
        6.0 * s * h - 24.0 * c + 24.0,
    );
    (a0, c1)
}

/// Phase-lag and its first two derivatives zero with b0 = 1/12.
/// Returns (a0, c1, b1).
pub(crate) fn pl3(h: f64) -> (Ratio, Ratio, Ratio) {
    let Trig {
        h,
        h2,
        h3,
        h4,
        s,
        c,
        c2,
    } = Trig::at(h);
    let big = c2 * h3
        + 16.0 * c2 * h
        + 5.0 * c * h2 * s
        + 72.0 * c * s
        + 2.0 * c * h3
        + 32.0 * c * h
        + 2.0 * s * h2
        - 48.0 * h
        - 2.0 * h3
        - 72.0 * s;
    let small = c * h2 + 7.0 * s * h + 8.0 - 8.0 * c;

    let a0 = Ratio::new(
        0.5 * (c * h3 + 12.0 * c * h - 12.0 * s + 3.0 * s * h2),
        big * h2,
    );
    let c1 = Ratio::new(
        (24.0 * c2 * h2 + c2 * h4 + 96.0 * c2 + c * s * h3 + 12.0 * c * h2
            - 24.0 * c * s * h
            - 96.0 * c
            + c * h4
            - s * h3
            - 2.0 * h4
            - 60.0 * s * h
            - 48.0 * h2)
            / 6.0,
        small,
    );
    let b1 = Ratio::new(-big / 6.0, h * small);
    (a0, c1, b1)
}

/// Phase-lag and its first three derivatives zero; all four coefficients free.
/// Returns (a0, c1, b0, b1).
pub(crate) fn pl4(h: f64) -> (Ratio, Ratio, Ratio, Ratio) {
    let Trig {
        h,
        h2,
        h3,
        s,
        c,
        c2,
        ..
    } = Trig::at(h);
    let c3 = c2 * c;
    let upper = 6.0 * c3 * h + 6.0 * s * c2 - 2.0 * c2 * h2 * s + c2 * h3 + 3.0 * c2 * h
        - 6.0 * c * s
        - 4.0 * c * h2 * s
        - 12.0 * c * h
        + 2.0 * h3
        + 3.0 * h
        + 12.0 * s * h2;
    let lower = c2 * h3 - 21.0 * c2 * h + 8.0 * c * h2 * s - 12.0 * c * h - 12.0 * c * s
        + 4.0 * s * h2
        + 33.0 * h
        + 12.0 * s
        + 2.0 * h3;

    let a0 = Ratio::new(0.25 * (3.0 * c2 + c2 * h2 + 2.0 * h2 - 3.0), upper * h);
    let c1 = Ratio::new(
        -2.0 * (-12.0 * c3 * h + c2 * h3 - 21.0 * c2 * h - 12.0 * s * c2 - 4.0 * c2 * h2 * s
            + 12.0 * c * s
            - 8.0 * c * h2 * s
            + 24.0 * c * h
            + 2.0 * h3
            + 9.0 * h
            + 24.0 * s * h2),
        lower,
    );
    let b0 = Ratio::new(
        -2.0 * (3.0 * c2 * h
            + c2 * h3
            + 6.0 * c * s
            + 4.0 * c * h2 * s
            + 6.0 * c * h
            + 2.0 * s * h2
            - 9.0 * h
            - 6.0 * s
            + 2.0 * h3),
        lower * h2,
    );
    let b1 = Ratio::new(4.0 * upper, lower * h2);
    (a0, c1, b0, b1)
}
