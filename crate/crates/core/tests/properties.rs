use chisholm::chisholm::{assemble_system, fit_diagonal};
use chisholm::generators::{
    appell_f1, cm2_function, exp_half_sum, ising_susceptibility, li22, log_one_plus_sum, sin_half_sum,
};
use chisholm::pade;
use chisholm::series::{DoubleSeries, Poly2, SeparableMap};
use chisholm::{Error, Rational, Scalar};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn with_unit(s: DoubleSeries<Rational>) -> DoubleSeries<Rational> {
    s.add_polynomial(&Poly2::parse("1").unwrap())
}

fn symmetric_inputs(degree: usize) -> Vec<(&'static str, DoubleSeries<Rational>)> {
    vec![
        ("exp", exp_half_sum(degree)),
        ("sin", with_unit(sin_half_sum(degree))),
        ("log", with_unit(log_one_plus_sum(degree))),
        ("f1 b1=b2", appell_f1(&q(1, 2), &q(1, 3), &q(1, 3), &q(1, 7), degree).unwrap()),
    ]
}

fn transpose(g: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    (0..g.len()).map(|i| g.iter().map(|row| row[i].clone()).collect()).collect()
}

#[test]
fn symmetric_series_give_symmetric_grids() {
    for m in 1..=4 {
        for (name, s) in symmetric_inputs(2 * m + 1) {
            let (ca, _) = fit_diagonal(&s, m).unwrap();
            assert_eq!(ca.numerator(), transpose(ca.numerator()).as_slice(), "{name} M={m}");
            assert_eq!(ca.denominator(), transpose(ca.denominator()).as_slice(), "{name} M={m}");
        }
    }
}

#[test]
fn swapping_variables_transposes_grids() {
    let s = appell_f1(&q(1, 2), &q(1, 3), &q(1, 5), &q(1, 7), 7).unwrap();
    let (ca, _) = fit_diagonal(&s, 3).unwrap();
    let (swapped, _) = fit_diagonal(&s.swap_xy(), 3).unwrap();
    assert_eq!(swapped.numerator(), transpose(ca.numerator()).as_slice());
    assert_eq!(swapped.denominator(), transpose(ca.denominator()).as_slice());
}

#[test]
fn taylor_residuals_vanish_for_exact_fits() {
    for m in 1..=4 {
        let d = 2 * m + 1;
        let mut inputs = symmetric_inputs(d);
        inputs.push(("ising", ising_susceptibility(d).rotate_pm().unwrap().add_polynomial(&Poly2::parse("x+y").unwrap())));
        inputs.push(("cm2", cm2_function(d).unwrap().rotate_pm().unwrap()));
        inputs.push(("li22", li22(d).rotate_pm().unwrap().add_polynomial(&Poly2::parse("1+x+y").unwrap())));
        for (name, s) in inputs {
            let (ca, _) = fit_diagonal(&s, m).unwrap();
            let residuals = ca.taylor_residuals(&s).unwrap();
            assert!(residuals.is_zero(), "{name} M={m}: {:?}", residuals.nonzero());
        }
    }
}

#[test]
fn equation_count_is_structural() {
    for m in 1..=6 {
        let sys = assemble_system(&exp_half_sum(2 * m + 1), m).unwrap();
        assert_eq!(sys.system.dim(), m * m + 2 * m);
        assert_eq!(sys.numerator_forms.len(), (m + 1) * (m + 1));
        assert_eq!(sys.symmetrized_rows, m);
        let (_, report) = fit_diagonal(&exp_half_sum(2 * m + 1), m).unwrap();
        assert_eq!(report.equations_total, 2 * m * m + 4 * m);
    }
}

#[test]
fn reciprocal_identity_for_exp() {
    for m in 1..=3 {
        let d = 2 * m + 1;
        let s = exp_half_sum(d);
        let (ca, _) = fit_diagonal(&s, m).unwrap();
        let (inv, _) = fit_diagonal(&s.truncated_reciprocal(d).unwrap(), m).unwrap();
        assert_eq!(inv, ca.reciprocal(), "M={m}");
    }
}

#[test]
fn homographic_invariance_at_rational_points() {
    let points = [(q(1, 7), q(2, 9)), (q(-1, 5), q(1, 3)), (q(3, 11), q(3, 11)), (q(-2, 13), q(-1, 4))];
    for (a, b) in [(2, 1), (1, -1)] {
        for m in 1..=2 {
            let d = 2 * m + 1;
            let s = appell_f1(&q(1, 2), &q(1, 3), &q(1, 5), &q(1, 7), d).unwrap();
            let map = SeparableMap::homographic(q(a, 1), q(b, 1), d);
            let (ca, _) = fit_diagonal(&s, m).unwrap();
            let (mapped, _) = fit_diagonal(&s.compose_separable(&map, d).unwrap(), m).unwrap();
            let h = |t: &Rational| q(a, 1) * t / (q(1, 1) - q(b, 1) * t);
            for (u, v) in &points {
                assert_eq!(
                    mapped.evaluate_exact(u, v).unwrap(),
                    ca.evaluate_exact(&h(u), &h(v)).unwrap(),
                    "A={a} B={b} M={m} at ({u}, {v})"
                );
            }
        }
    }
}

#[test]
fn reduction_matches_univariate_pade() {
    for m in 1..=4 {
        let d = 2 * m + 1;
        let mut inputs = symmetric_inputs(d);
        inputs.push(("f1", appell_f1(&q(1, 2), &q(1, 3), &q(1, 5), &q(1, 7), d).unwrap()));
        for (name, s) in inputs {
            let (ca, _) = fit_diagonal(&s, m).unwrap();
            let direct = pade::fit_diagonal(&s.slice_y0(), m).unwrap();
            assert_eq!(ca.reduce_to_pade(), direct, "{name} M={m}");
            let direct_y = pade::fit_diagonal(&s.swap_xy().slice_y0(), m).unwrap();
            assert_eq!(ca.reduce_to_pade_y(), direct_y, "{name} M={m}");
        }
    }
}

#[test]
fn unnormalized_and_short_series_are_rejected() {
    assert!(matches!(fit_diagonal(&li22(5), 2), Err(Error::NotNormalized(_))));
    let err = fit_diagonal(&exp_half_sum(4), 2).unwrap_err();
    match err {
        Error::InsufficientTerms { missing } => assert!(missing.contains(&(4, 1)) && missing.contains(&(1, 4))),
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn unrotated_li22_misses_mixed_terms_but_rotation_fits() {
    let offset = Poly2::parse("1+x+y").unwrap();
    let plain = li22(7).add_polynomial(&offset);
    assert!(fit_diagonal(&plain, 3).is_err());
    let rotated = li22(7).rotate_pm().unwrap().add_polynomial(&offset);
    assert!(fit_diagonal(&rotated, 3).is_ok());
}

fn small_series() -> impl Strategy<Value = DoubleSeries<Rational>> {
    proptest::collection::vec((-9i64..=9, 1i64..=6), 28).prop_map(|raw| {
        let mut it = raw.into_iter();
        DoubleSeries::from_fn((q(0, 1), q(0, 1)), 6, |m, n| {
            let (a, b) = it.next().unwrap();
            if m == 0 && n == 0 {
                q(1, 1)
            } else {
                q(a, b)
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_fits_satisfy_their_equations(s in small_series(), m in 1usize..=2) {
        match fit_diagonal(&s, m) {
            Ok((ca, _)) => prop_assert!(ca.taylor_residuals(&s).unwrap().is_zero()),
            Err(Error::SingularSystem { .. }) => {}
            Err(other) => return Err(TestCaseError::fail(other.to_string())),
        }
    }

    #[test]
    fn float_backend_tracks_exact(s in small_series()) {
        if let Ok((exact, _)) = fit_diagonal(&s, 2) {
            if let Ok((float, report)) = fit_diagonal(&s.to_float(), 2) {
                prop_assert!(report.residual_max.unwrap() < 1e-6);
                let x = num_complex::Complex64::new(0.05, 0.0);
                let y = num_complex::Complex64::new(-0.03, 0.0);
                let (a, b) = (exact.evaluate(x, y), float.evaluate(x, y));
                if let (Ok(a), Ok(b)) = (a, b) {
                    prop_assert!((a - b).norm() <= 1e-6 * (1.0 + a.norm()));
                }
            }
        }
    }

    #[test]
    fn scaling_the_input_scales_the_numerator(s in small_series(), k in 1i64..=5) {
        let scaled = s.map(|c| c.clone() * q(k, 3));
        let workflow = chisholm::workflow::Workflow::default();
        if let (Ok(a), Ok(b)) = (workflow.fit(&s, 2), workflow.fit(&scaled, 2)) {
            prop_assert_eq!(b.approximant.denominator(), a.approximant.denominator());
            prop_assert_eq!(b.approximant, a.approximant.scaled(&q(k, 3)));
        }
    }
}
