//! Worked examples for every module, each checked against an independent value.

use approx::assert_relative_eq;
use chisholm::chisholm::{assemble_system, fit_diagonal, ChisholmApproximant};
use chisholm::demos;
use chisholm::generators::{
    appell_f1, appell_f1_transformed, appell_f2, appell_f2_ac_components, appell_f2_partial_sum, cm2_function,
    elementary_series_at, exp_half_sum, gauss_2f1, ising_susceptibility, li22, log_one_plus_sum, pochhammer,
    sin_half_sum, sinh_half_sum, Elementary,
};
use chisholm::linalg::DenseSystem;
use chisholm::pade::{self, PadeApproximant};
use chisholm::series::{DoubleSeries, Poly2, SeparableMap, UniSeries};
use chisholm::workflow::Workflow;
use chisholm::{Error, Rational, Scalar};
use num_complex::Complex64;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn origin() -> (Rational, Rational) {
    (q(0, 1), q(0, 1))
}

fn exp_sum(degree: usize) -> DoubleSeries<Rational> {
    let f = |k: usize| (1..=k as i64).product::<i64>();
    DoubleSeries::from_fn(origin(), degree, |m, n| q(1, f(m) * f(n)))
}

fn geometric(degree: usize) -> DoubleSeries<Rational> {
    DoubleSeries::from_fn(origin(), degree, |_, _| q(1, 1))
}

fn poly(terms: &[(usize, usize, i64)], degree: usize) -> DoubleSeries<Rational> {
    DoubleSeries::from_terms(origin(), degree, terms.iter().map(|&(m, n, c)| (m, n, q(c, 1)))).unwrap()
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

#[test]
fn linalg_examples() {
    let identity = DenseSystem::from_rows(
        vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]],
        vec![q(3, 2), q(-7, 5)],
    )
    .unwrap();
    assert_eq!(identity.solve().unwrap(), vec![q(3, 2), q(-7, 5)]);
    let singular = DenseSystem::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]], vec![q(1, 1), q(2, 1)]).unwrap();
    assert!(matches!(singular.solve(), Err(Error::SingularSystem { .. })));
    let float = DenseSystem::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0]], vec![1.0, 2.0]).unwrap();
    assert!(matches!(float.solve(), Err(Error::SingularSystem { .. })));

    let b = assemble_system(&geometric(3), 1).unwrap().system.solve().unwrap();
    assert_eq!(b, vec![q(-1, 1), q(-1, 1), q(1, 1)]);
}

#[test]
fn series_lookup_and_support() {
    assert_eq!(exp_sum(3).coefficient(1, 1), Some(&q(1, 1)));
    assert_eq!(geometric(3).coefficient(2, 1), Some(&q(1, 1)));
    assert_eq!(geometric(3).coefficient(4, 0), None);
    assert!(exp_sum(3).has_chisholm_support(1).0);
    let (ok, missing) = exp_sum(4).has_chisholm_support(2);
    assert!(!ok);
    assert_eq!(missing, vec![(4, 1), (3, 2), (2, 3), (1, 4)]);
    assert!(exp_sum(9).has_chisholm_support(2).0);
}

#[test]
fn series_normalization_and_offsets() {
    let (same, one) = exp_sum(3).scale_to_unit_constant().unwrap();
    assert_eq!((same, one), (exp_sum(3), q(1, 1)));
    let doubled = exp_sum(3).map(|c| c * q(2, 1));
    assert_eq!(doubled.scale_to_unit_constant().unwrap(), (exp_sum(3), q(2, 1)));
    assert!(matches!(li22(5).scale_to_unit_constant(), Err(Error::NotNormalized(_))));

    let shifted = li22(5).add_polynomial(&Poly2::parse("1+x+y").unwrap());
    assert_eq!(shifted.coefficient(0, 0), Some(&q(1, 1)));
    assert_eq!(shifted.coefficient(1, 0), Some(&q(1, 1)));
    assert_eq!(shifted.coefficient(0, 1), Some(&q(1, 1)));
    assert_eq!(shifted.coefficient(2, 1), Some(&q(1, 4)));
    assert_eq!(li22(5).add_polynomial(&Poly2::zero()), li22(5));
}

#[test]
fn rotation_examples() {
    assert_eq!(poly(&[(1, 0, 1)], 2).rotate_pm().unwrap(), poly(&[(1, 0, 1), (0, 1, -1)], 2));
    assert_eq!(poly(&[(1, 1, 1)], 2).rotate_pm().unwrap(), poly(&[(2, 0, 1), (0, 2, -1)], 2));
    assert_eq!(poly(&[(2, 0, 1), (0, 2, 1)], 2).rotate_pm().unwrap(), poly(&[(2, 0, 2), (0, 2, 2)], 2));
    let s = exp_half_sum(6);
    assert_eq!(s.rotate_pm().unwrap().unrotate_pm().unwrap(), s);
}

#[test]
fn composition_examples() {
    let s = exp_half_sum(5);
    assert_eq!(s.compose_separable(&SeparableMap::identity(5), 5).unwrap(), s);
    let (a, b) = (q(3, 1), q(2, 1));
    let map = SeparableMap::homographic(a.clone(), b.clone(), 3);
    let x = poly(&[(1, 0, 1)], 3).compose_separable(&map, 3).unwrap();
    assert_eq!(x.coefficient(1, 0), Some(&a));
    assert_eq!(x.coefficient(2, 0), Some(&(a.clone() * &b)));
    assert_eq!(x.coefficient(3, 0), Some(&(a * &b * &b)));
    let xy = poly(&[(1, 1, 1)], 3).compose_separable(&SeparableMap::homographic(q(1, 1), q(1, 1), 3), 3).unwrap();
    assert_eq!(xy, poly(&[(1, 1, 1), (2, 1, 1), (1, 2, 1)], 3));
}

#[test]
fn reciprocal_and_slice_examples() {
    assert_eq!(poly(&[(0, 0, 1)], 4).truncated_reciprocal(4).unwrap(), poly(&[(0, 0, 1)], 4));
    let product = poly(&[(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)], 5);
    assert_eq!(product.truncated_reciprocal(5).unwrap(), geometric(5));
    let inv = exp_sum(5).truncated_reciprocal(5).unwrap();
    let f = |k: usize| (1..=k as i64).product::<i64>();
    for (m, n, c) in inv.terms() {
        let sign = if (m + n) % 2 == 0 { 1 } else { -1 };
        assert_eq!(c, &q(sign, f(m) * f(n)));
    }
    let slice = exp_sum(5).slice_y0();
    assert_eq!(slice.coeffs, (0..=5).map(|k| q(1, f(k))).collect::<Vec<_>>());
    assert!(li22(6).slice_y0().coeffs.iter().all(|c| *c == q(0, 1)));
    assert_eq!(exp_half_sum(5).slice_y0(), exp_half_sum(5).swap_xy().slice_y0());
}

#[test]
fn pade_examples() {
    let exp1 = UniSeries::from_fn(q(0, 1), 2, |k| q(1, [1, 1, 2][k]));
    let pa = pade::fit_diagonal(&exp1, 1).unwrap();
    assert_eq!(pa, PadeApproximant::new(1, q(0, 1), vec![q(1, 1), q(1, 2)], vec![q(1, 1), q(-1, 2)]).unwrap());
    assert_eq!(pa.evaluate_exact(&q(0, 1)).unwrap(), q(1, 1));
    assert_eq!(pa.evaluate_exact(&q(1, 1)).unwrap(), q(3, 1));
    assert!(matches!(pa.evaluate_exact(&q(2, 1)), Err(Error::PoleHit)));
    assert!(matches!(pa.evaluate(real(2.0)), Err(Error::PoleHit)));

    for m in 1..=4 {
        let constant = UniSeries::from_fn(q(0, 1), 2 * m, |k| if k == 0 { q(1, 1) } else { q(0, 1) });
        let fit = pade::fit_diagonal(&constant, m).unwrap();
        assert!(fit.numerator().iter().skip(1).chain(fit.denominator().iter().skip(1)).all(|c| *c == q(0, 1)));
    }
    let geo = pade::fit_diagonal(&UniSeries::from_fn(q(0, 1), 2, |_| q(1, 1)), 1).unwrap();
    assert_eq!((geo.numerator(), geo.denominator()), (&[q(1, 1), q(0, 1)][..], &[q(1, 1), q(-1, 1)][..]));
}

#[test]
fn chisholm_examples() {
    for m in 1..=3 {
        let (ca, _) = fit_diagonal(&poly(&[(0, 0, 1)], 2 * m + 1), m).unwrap();
        assert_eq!(ca.evaluate_exact(&q(5, 7), &q(-2, 3)).unwrap(), q(1, 1));
        assert!(ca.numerator().iter().flatten().skip(1).all(|c| *c == q(0, 1)));
    }
    let (geo, _) = fit_diagonal(&geometric(3), 1).unwrap();
    assert_eq!(geo.numerator(), &[vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(0, 1)]][..]);
    assert_eq!(geo.denominator(), &[vec![q(1, 1), q(-1, 1)], vec![q(-1, 1), q(1, 1)]][..]);

    let (exp1, _) = fit_diagonal(&exp_sum(3), 1).unwrap();
    assert_eq!(exp1.evaluate(real(0.0), real(0.0)).unwrap(), real(1.0));
    assert_eq!(exp1.reciprocal().reciprocal(), exp1);
    let (inverse, _) = fit_diagonal(&exp_sum(3).truncated_reciprocal(3).unwrap(), 1).unwrap();
    assert_eq!(inverse, exp1.reciprocal());
    assert_eq!(exp1.reduce_to_pade().numerator(), exp1.reduce_to_pade_y().numerator());
}

#[test]
fn chisholm_evaluation_goldens() {
    let (exp10, _) = fit_diagonal(&exp_half_sum(21), 10).unwrap();
    let v = exp10.evaluate_precise_f64(9.0, 9.0).unwrap();
    assert_relative_eq!(v, 8103.083927461, max_relative = 1e-12);
    let (log10, _) = Workflow::new(false, Poly2::parse("1").unwrap()).fit(&log_one_plus_sum(21), 10).map(|f| (f, ())).unwrap();
    assert_relative_eq!(log10.evaluate_precise_f64(3.1, 3.1).unwrap(), 1.974099414, max_relative = 5e-10);

    let slice = exp_half_sum(21).slice_y0();
    assert_eq!(exp10.reduce_to_pade(), pade::fit_diagonal(&slice, 10).unwrap());
    let (a, b) = (exp10.evaluate(real(0.3), real(-0.2)).unwrap(), exp10.evaluate_mapped(real(0.3), real(-0.2)).unwrap());
    assert_eq!(a, b);
}

#[test]
fn residual_detector_flags_corruption() {
    let s = exp_half_sum(7);
    let (ca, _) = fit_diagonal(&s, 3).unwrap();
    assert!(ca.taylor_residuals(&s).unwrap().is_zero());
    let mut num = ca.numerator().to_vec();
    num[1][2] = &num[1][2] + q(1, 1000);
    let corrupted = ChisholmApproximant::new(3, origin(), num, ca.denominator().to_vec()).unwrap();
    let r = corrupted.taylor_residuals(&s).unwrap();
    assert_eq!(r.nonzero(), vec![(1, 2)]);

    let (float, report) = fit_diagonal(&exp_half_sum(21).to_float(), 10).unwrap();
    let max_c = exp_half_sum(21).terms().map(|(_, _, c)| c.to_f64().abs()).fold(0.0, f64::max);
    assert!(report.residual_max.unwrap() <= 1e-8 * max_c);
    assert!(float.taylor_residuals(&exp_half_sum(21).to_float()).unwrap().max_abs() <= 1e-8 * max_c);
}

#[test]
fn rotated_workflows() {
    let ising = Workflow::new(true, Poly2::parse("x+y").unwrap()).fit(&ising_susceptibility(21), 10).unwrap();
    assert_relative_eq!(ising.evaluate_precise_f64(0.21, 0.21).unwrap(), 1.022807183, max_relative = 5e-10);
    let cm2 = Workflow::new(true, Poly2::zero()).fit(&cm2_function(21).unwrap(), 10).unwrap();
    assert_relative_eq!(cm2.evaluate_precise_f64(0.4, 1.1).unwrap(), 2.208933189, max_relative = 5e-10);
    assert_relative_eq!(cm2.evaluate_precise_f64(0.1, 0.1).unwrap(), 1.098840521, max_relative = 5e-10);
    let plain = Workflow::new(false, Poly2::zero()).fit(&exp_half_sum(7), 3).unwrap();
    assert_eq!(
        plain.evaluate(real(0.4), real(0.1)).unwrap(),
        plain.approximant.evaluate(real(0.4), real(0.1)).unwrap()
    );
}

#[test]
fn generator_coefficients() {
    assert_eq!(pochhammer(&q(7, 3), 0), q(1, 1));
    assert_eq!(pochhammer(&q(1, 1), 5), q(120, 1));
    assert_eq!(pochhammer(&q(1, 2), 3), q(15, 8));

    let e = exp_half_sum(4);
    assert_eq!((e.coefficient(0, 0), e.coefficient(1, 1)), (Some(&q(1, 1)), Some(&q(1, 4))));
    assert_relative_eq!(*elementary_series_at(Elementary::ExpHalfSum, (3.0, 6.0), 2).coefficient(0, 0).unwrap(), 90.0171313005, max_relative = 1e-11);
    assert_eq!(sin_half_sum(3).coefficient(0, 0), Some(&q(0, 1)));
    assert_eq!(sin_half_sum(3).coefficient(1, 0), Some(&q(1, 2)));
    assert_eq!(sinh_half_sum(3).coefficient(1, 0), Some(&q(1, 2)));
    assert_relative_eq!(*elementary_series_at(Elementary::SinHalfSum, (1.6, 1.6), 2).coefficient(0, 0).unwrap(), 0.999573603, max_relative = 1e-9);
    let l = log_one_plus_sum(3);
    assert_eq!((l.coefficient(1, 0), l.coefficient(2, 0), l.coefficient(1, 1)), (Some(&q(1, 1)), Some(&q(-1, 2)), Some(&q(-1, 1))));

    let g = gauss_2f1(&q(1, 1), &q(1, 1), &q(1, 1), 6).unwrap();
    assert!(g.coeffs.iter().all(|c| *c == q(1, 1)));
    assert_eq!(gauss_2f1(&q(1, 2), &q(1, 3), &q(1, 5), 2).unwrap().coeffs[1], q(5, 6));

    let f1 = appell_f1(&q(1, 2), &q(1, 3), &q(1, 5), &q(1, 7), 4).unwrap();
    assert_eq!(f1.coefficient(0, 0), Some(&q(1, 1)));
    assert_eq!(f1.coefficient(1, 0), Some(&(q(1, 2) * q(1, 3) / q(1, 7))));
    let reduced = appell_f1(&q(1, 2), &q(1, 3), &q(0, 1), &q(1, 7), 6).unwrap();
    assert_eq!(reduced.slice_y0(), gauss_2f1(&q(1, 2), &q(1, 3), &q(1, 7), 6).unwrap());
    assert!(reduced.terms().all(|(_, n, c)| n == 0 || *c == q(0, 1)));

    let f2 = appell_f2(&q(3, 10), &q(4, 10), &q(3, 17), &q(1, 5), &q(1, 7), 4).unwrap();
    assert_eq!(f2.coefficient(1, 0), Some(&(q(3, 10) * q(4, 10) / q(1, 5))));
    let f2_value = appell_f2_partial_sum(0.3, 0.4, 3.0 / 17.0, 0.2, 1.0 / 7.0, real(0.2), real(0.2), 41);
    assert!((f2_value.re - 1.2989).abs() < 5e-5, "{f2_value}");
}

#[test]
fn transformed_f1_and_continuations() {
    let same = appell_f1_transformed(&q(1, 2), &q(1, 3), &q(1, 5), &q(1, 2), 6).unwrap();
    assert_eq!(same.series.coefficient(0, 0), Some(&q(1, 1)));
    assert!(same.series.terms().all(|(m, n, c)| m + n == 0 || *c == q(0, 1)));
    let t = appell_f1_transformed(&q(1, 2), &q(1, 3), &q(1, 5), &q(1, 7), 60).unwrap();
    let v = t.evaluate_partial_sum(real(-1.0), real(-1.0)).unwrap();
    assert!((v.re - 0.07863466908).abs() < 5e-11, "{v}");

    let spec = |a, b1, b2, c1, c2| appell_f2_ac_components(&a, &b1, &b2, &c1, &c2, 6);
    let parts = spec(q(123, 100), q(154, 100), q(167, 100), q(211, 100), q(239, 100)).unwrap();
    assert!(parts.iter().all(|p| p.series.coefficient(0, 0) == Some(&q(1, 1))));
    assert!(matches!(spec(q(1, 1), q(1, 2), q(2, 1), q(3, 2), q(7, 3)), Err(Error::ParameterPole { .. })));
}

#[test]
fn special_series_coefficients() {
    let l = li22(5);
    assert_eq!(l.coefficient(2, 1), Some(&q(1, 4)));
    assert_eq!(l.coefficient(3, 1), Some(&q(1, 9)));
    assert_eq!(l.coefficient(3, 2), Some(&q(1, 36)));
    assert!(l.terms().all(|(i, j, c)| i > j || *c == q(0, 1)));

    let p = ising_susceptibility(5);
    assert_eq!(p.coefficient(0, 0), Some(&q(1, 1)));
    assert_eq!(p.coefficient(1, 1), Some(&q(1, 1)));
    assert_eq!(p.coefficient(2, 2), Some(&q(3, 2)));
    assert_eq!(p.coefficient(0, 2), Some(&q(-1, 2)));

    let c = cm2_function(4).unwrap();
    assert_eq!(c.coefficient(0, 0), Some(&q(1, 1)));
    assert_eq!(c.coefficient(0, 1), Some(&q(1, 1)));
    assert_eq!(c.coefficient(1, 1), Some(&q(-1, 1)));
}

#[test]
fn demo_tables_cover_the_grids() {
    let exp = demos::elementary_demo(Elementary::ExpHalfSum, 10, None, demos::Backend::Exact).unwrap();
    assert_eq!(exp.rows.len(), 16);
    let row = exp.row_at(3.0, 3.0).unwrap();
    assert_relative_eq!(row.approximant.re, 20.08553692, max_relative = 5e-10);
    let sin = demos::elementary_demo(Elementary::SinHalfSum, 10, None, demos::Backend::Float).unwrap();
    assert_relative_eq!(sin.row_at(1.6, 4.6).unwrap().approximant.re, 0.04158066227, max_relative = 1e-8);
    assert!(demos::run("nope", 3, None, demos::Backend::Exact).is_err());
}
