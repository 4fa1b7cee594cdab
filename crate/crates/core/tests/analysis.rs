use phasefit::analysis::{
    asymptotic_growth, convergence_order, efficiency_sweep, log_spaced, lte, lte_in_g,
    AnalyticProblem, LteDerivatives, ProfileJet, ReferenceKind,
};
use phasefit::schrodinger::{RadialProblem, E1_REFERENCE};
use phasefit::{coefficients, step, Error, MethodId, NfeCounting};

/// Even derivatives of `y'' = f y` at a point from the jets of `f` and `y`,
/// by repeated Leibniz differentiation: `y^(k+2) = sum_i C(k, i) f^(i) y^(k-i)`.
fn even_derivatives(f: &[f64; 7], y: f64, dy: f64) -> LteDerivatives {
    let mut d = [0.0; 9];
    d[0] = y;
    d[1] = dy;
    for k in 0..7 {
        let mut binom = 1.0;
        let mut sum = 0.0;
        for i in 0..=k {
            sum += binom * f[i] * d[k - i];
            binom = binom * (k - i) as f64 / (i + 1) as f64;
        }
        d[k + 2] = sum;
    }
    LteDerivatives {
        y: d[0],
        y2: d[2],
        y4: d[4],
        y6: d[6],
        y8: d[8],
    }
}

/// The truncation error divided by `h^8`, for `y'' = (g + G) y` fitted at
/// `omega^2 = -G`, evaluated through the derivative form.
fn lte_from_jet(method: MethodId, jet: &ProfileJet, big_g: f64) -> f64 {
    let mut f = jet.g;
    f[0] += big_g;
    let d = even_derivatives(&f, jet.y, jet.dy);
    lte(method, &d, (-big_g).sqrt(), 1.0).value
}

fn polynomial(c: [f64; 4], g: f64) -> f64 {
    ((c[3] * g + c[2]) * g + c[1]) * g + c[0]
}

#[test]
fn pl1_unit_eighth_derivative() {
    let d = LteDerivatives {
        y: 0.0,
        y2: 0.0,
        y4: 0.0,
        y6: 0.0,
        y8: 1.0,
    };
    let p = lte(MethodId::Pl1, &d, 0.0, 1.0);
    assert!((p.value - 1.0 / 6048.0).abs() < 1e-18);
}

#[test]
fn pl4_annihilates_cosine() {
    for omega in [0.5, 1.0, 7.0] {
        let x: f64 = 0.8;
        let d = LteDerivatives::harmonic((omega * x).cos(), omega);
        let v = lte(MethodId::Pl4, &d, omega, 0.05).value;
        assert!(v.abs() < 1e-20 * omega.powi(8).max(1.0), "{v:e}");
    }
}

#[test]
fn pl2_predicts_one_step_error() {
    // y'' = -y, fitted at 1.4: the one-step residual with exact history
    // approaches the prediction as h shrinks
    let (omega, fit) = (1.0_f64, 1.4_f64);
    let x = 0.7;
    let mut ratios = Vec::new();
    for h in [0.4, 0.2, 0.1] {
        let exact = |t: f64| (omega * t).sin();
        let w = -omega * omega;
        let next = step(MethodId::Pl2, w, w, w, exact(x - h), exact(x), h, fit * h).unwrap();
        let measured = exact(x + h) - next;
        let d = LteDerivatives::harmonic(exact(x), omega);
        let predicted = lte(MethodId::Pl2, &d, fit, h).value;
        ratios.push(measured / predicted);
    }
    let last = *ratios.last().unwrap();
    assert!((last - 1.0).abs() < 0.01, "{ratios:?}");
    assert!((ratios[0] - 1.0).abs() > (last - 1.0).abs(), "{ratios:?}");
}

#[test]
fn g_polynomials_match_derivative_form() {
    let jet = ProfileJet::exp_sine(1.0);
    for m in MethodId::FAMILY {
        let c = lte_in_g(m, &jet).unwrap();
        // the printed polynomial for the first method carries the opposite
        // sign convention
        let sign = if m == MethodId::Pl1 { -1.0 } else { 1.0 };
        for big_g in [-0.5, -3.0, -20.0, -150.0] {
            let oracle = lte_from_jet(m, &jet, big_g);
            let value = sign * polynomial(c, big_g);
            let scale = oracle.abs().max(1e-6);
            assert!(
                (value - oracle).abs() <= 1e-9 * scale,
                "{m} G = {big_g}: {value:e} vs {oracle:e}"
            );
        }
    }
}

#[test]
fn growth_powers() {
    let jet = ProfileJet::exp_sine(1.0);
    let gs = log_spaced(1e3, 1e7, 9);
    for (m, power) in [
        (MethodId::Pl1, 3.0),
        (MethodId::Pl2, 2.0),
        (MethodId::Pl3, 2.0),
        (MethodId::Pl4, 1.0),
    ] {
        let r = asymptotic_growth(m, &jet, &gs).unwrap();
        assert!(
            (r.fitted_power - power).abs() <= 0.1,
            "{m}: {}",
            r.fitted_power
        );
        assert_eq!(r.leading_power as f64, power);
    }
}

#[test]
fn surviving_square_term_ratio() {
    // only g'' is non-zero, so the G^2 coefficients reduce to the g'' y term
    let jet = ProfileJet {
        g: [0.0, 0.0, 0.7, 0.0, 0.0, 0.0, 0.0],
        y: 0.4,
        dy: 0.0,
    };
    let pl2 = lte_in_g(MethodId::Pl2, &jet).unwrap()[2];
    let pl3 = lte_in_g(MethodId::Pl3, &jet).unwrap()[2];
    assert!((pl2 / pl3 - 19.0 / 12.0).abs() < 1e-9, "{}", pl2 / pl3);
}

#[test]
fn convergence_slopes() {
    let p = AnalyticProblem::harmonic(1.0, 1.3, 10.0 * std::f64::consts::PI);
    let hs = [0.2, 0.1, 0.05, 0.025];
    for m in MethodId::FAMILY {
        let r = convergence_order(m, &p, &hs).unwrap();
        assert!((r.slope - 6.0).abs() <= 0.3, "{m}: {}", r.slope);
    }
    let r = convergence_order(MethodId::Numerov, &p, &hs).unwrap();
    assert!((r.slope - 4.0).abs() <= 0.3, "{}", r.slope);
}

#[test]
fn convergence_at_higher_fit_frequency() {
    let p = AnalyticProblem::harmonic(1.0, 2.0, 10.0 * std::f64::consts::PI);
    let r = convergence_order(MethodId::Pl3, &p, &[0.1, 0.05, 0.025, 0.0125]).unwrap();
    assert!((r.slope - 6.0).abs() <= 0.3, "{}", r.slope);
}

#[test]
fn single_step_size_is_rejected() {
    let p = AnalyticProblem::harmonic(1.0, 1.3, 10.0);
    assert!(matches!(
        convergence_order(MethodId::Pl3, &p, &[0.1]),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn fitted_frequency_integrates_exactly() {
    let p = AnalyticProblem::harmonic(1.0, 1.0, 10.0 * std::f64::consts::PI);
    for m in MethodId::FAMILY {
        assert!(p.endpoint_error(m, 0.1).unwrap() < 1e-12);
    }
}

#[test]
fn empty_roster_gives_empty_map() {
    let p = RadialProblem::woods_saxon(E1_REFERENCE, 0.01);
    let map = efficiency_sweep(&[], E1_REFERENCE, &[0.01], &p, NfeCounting::PerNewNode).unwrap();
    assert!(map.is_empty());
}

#[test]
fn small_sweep_is_ordered() {
    let p = RadialProblem::woods_saxon(E1_REFERENCE, 0.01);
    let hs: Vec<f64> = [750.0, 1000.0, 1500.0].iter().map(|n| 15.0 / n).collect();
    let map = efficiency_sweep(
        &MethodId::ALL,
        E1_REFERENCE,
        &hs,
        &p,
        NfeCounting::PerNewNode,
    )
    .unwrap();
    assert_eq!(map.len(), 5);
    for curve in map.values() {
        assert_eq!(curve.reference_kind, ReferenceKind::Published);
        assert_eq!(curve.points.len(), 3);
        for w in curve.points.windows(2) {
            assert!(w[0].nfe < w[1].nfe);
            assert!(w[1].err <= w[0].err, "{}", curve.method);
        }
    }
    let order = [
        MethodId::Pl4,
        MethodId::Pl3,
        MethodId::Pl2,
        MethodId::Pl1,
        MethodId::Numerov,
    ];
    for i in 0..3 {
        for pair in order.windows(2) {
            let (a, b) = (&map[&pair[0]].points[i], &map[&pair[1]].points[i]);
            assert_eq!(a.n, b.n);
            assert!(a.err <= b.err, "{} vs {} at n = {}", pair[0], pair[1], a.n);
        }
    }
}

#[test]
fn coefficients_reduce_to_classical_values() {
    let c = coefficients(MethodId::Pl2, 1e-4).unwrap();
    assert!((c.b0 - 1.0 / 12.0).abs() < 1e-15);
    assert!((c.a0 - 1.0 / 200.0).abs() < 1e-10);
}
