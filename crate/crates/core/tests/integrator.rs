use phasefit::schrodinger::{integrate_radial, RadialProblem, E1_REFERENCE};
use phasefit::{integrate, ConstantFrequency, Error, MethodId};
use proptest::prelude::*;

/// Plain three-term Numerov for `y'' = W(x) y`, written out directly.
fn textbook_numerov(w: impl Fn(f64) -> f64, h: f64, y0: f64, y1: f64, steps: usize) -> Vec<f64> {
    let k = h * h / 12.0;
    let mut ys = vec![y0, y1];
    for n in 1..steps {
        let (xm, x, xp) = ((n - 1) as f64 * h, n as f64 * h, (n + 1) as f64 * h);
        let next = (2.0 * (1.0 + 5.0 * k * w(x)) * ys[n] - (1.0 - k * w(xm)) * ys[n - 1])
            / (1.0 - k * w(xp));
        ys.push(next);
    }
    ys
}

fn harmonic(method: MethodId, omega: f64, fit: f64, h: f64, x_end: f64) -> phasefit::Trajectory {
    let w = -omega * omega;
    integrate(
        method,
        &move |_x: f64| w,
        &ConstantFrequency(fit),
        0.0,
        x_end,
        h,
        0.0,
        (omega * h).sin(),
    )
    .unwrap()
}

#[test]
fn numerov_matches_textbook_recurrence() {
    let h = 0.1;
    let t = harmonic(MethodId::Numerov, 1.0, 0.0, h, 100.0 * h);
    assert_eq!(t.steps(), 100);
    let reference = textbook_numerov(|_| -1.0, h, 0.0, h.sin(), 100);
    let worst =
        t.ys.iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
    assert!(worst <= 1e-12, "worst pointwise gap {worst:e}");

    // and both are close to sin(x)
    let err =
        t.xs.iter()
            .zip(&t.ys)
            .map(|(x, y)| (y - x.sin()).abs())
            .fold(0.0, f64::max);
    assert!(err < 1e-5, "{err:e}");
}

#[test]
fn numerov_matches_textbook_on_varying_field() {
    let h = 0.05;
    let w = |x: f64| -4.0 - x.cos();
    let t = integrate(
        MethodId::Numerov,
        &w,
        &ConstantFrequency(0.0),
        0.0,
        5.0,
        h,
        0.0,
        0.01,
    )
    .unwrap();
    let reference = textbook_numerov(w, h, 0.0, 0.01, t.ys.len() - 1);
    for (a, b) in t.ys.iter().zip(&reference) {
        assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
    }
}

#[test]
fn pl4_beats_numerov_on_unit_oscillator() {
    let h = 0.2;
    let pl4 = harmonic(MethodId::Pl4, 1.0, 1.0, h, 20.0);
    let numerov = harmonic(MethodId::Numerov, 1.0, 0.0, h, 20.0);
    let err = |t: &phasefit::Trajectory| {
        let (x, y) = t.last();
        assert!((x - 20.0).abs() < 1e-12);
        (y - x.sin()).abs()
    };
    assert!(
        err(&pl4) < err(&numerov),
        "{:e} vs {:e}",
        err(&pl4),
        err(&numerov)
    );
}

#[test]
fn fitted_methods_are_at_least_as_accurate_as_numerov_on_test_equation() {
    let omega = 2.0;
    for wh in [0.1, 0.5, 1.0] {
        let h = wh / omega;
        let x_end = 200.0 * h;
        let numerov = harmonic(MethodId::Numerov, omega, 0.0, h, x_end);
        for m in MethodId::FAMILY {
            let t = harmonic(m, omega, omega, h, x_end);
            for ((x, y), yn) in t.xs.iter().zip(&t.ys).zip(&numerov.ys) {
                let exact = (omega * x).sin();
                let (e, en) = ((y - exact).abs(), (yn - exact).abs());
                assert!(
                    e <= en + 1e-13,
                    "{m} at wh = {wh}, x = {x}: {e:e} vs {en:e}"
                );
            }
        }
    }
}

#[test]
fn interval_of_two_steps_is_rejected() {
    let r = integrate(
        MethodId::Pl3,
        &|_x: f64| -1.0,
        &ConstantFrequency(1.0),
        0.0,
        0.2,
        0.1,
        0.0,
        0.1,
    );
    assert!(matches!(r, Err(Error::Precondition(_))));
}

#[test]
fn woods_saxon_smoke_run() {
    let p = RadialProblem::woods_saxon(E1_REFERENCE, 15.0 / 500.0);
    for m in MethodId::ALL {
        let t = integrate_radial(m, &p).unwrap();
        assert_eq!(t.xs.len(), 501);
        assert!(t.ys.iter().all(|y| y.is_finite()));
        assert!((t.last().0 - 15.0).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integration_is_homogeneous(
        alpha in -1e3f64..1e3,
        y1 in -2.0f64..2.0,
        method in prop::sample::select(MethodId::ALL.to_vec()),
    ) {
        prop_assume!(alpha.abs() > 1e-3);
        let run = |a: f64| {
            integrate(
                method,
                &|x: f64| -3.0 - 0.5 * x.sin(),
                &|x: f64| (3.0 + 0.5 * x.sin()).sqrt(),
                0.0,
                6.0,
                0.05,
                a * 0.1,
                a * y1,
            )
            .unwrap()
        };
        let base = run(1.0);
        let scaled = run(alpha);
        let size = base.ys.iter().fold(0.0f64, |m, y| m.max(y.abs()));
        for (s, b) in scaled.ys.iter().zip(&base.ys) {
            prop_assert!((s - alpha * b).abs() <= 1e-13 * alpha.abs() * size);
        }
    }
}
