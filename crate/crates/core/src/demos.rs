//! Reproducible comparison tables for the bundled generators.

use num_complex::Complex64;

use crate::chisholm::{fit_diagonal, ChisholmApproximant};
use crate::error::{Error, Result};
use crate::generators::{
    appell_f1_transformed, appell_f2_ac_components, assemble, cm2_function, elementary_series,
    elementary_series_at, gauss_2f1, ising_susceptibility, li22, li22_at_one, li22_partial_sum_at_one,
    Elementary, GeneratorSpec,
};
use crate::pade;
use crate::scalar::{Rational, Scalar};
use crate::series::{DoubleSeries, Poly2};
use crate::workflow::{FittedWorkflow, Workflow};

/// Arithmetic used for fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

/// One evaluation point with the approximant value and an optional reference.
#[derive(Debug, Clone, PartialEq)]
pub struct PointRow {
    pub label: Option<String>,
    pub x: Complex64,
    pub y: Complex64,
    pub approximant: Complex64,
    pub reference: Option<Complex64>,
}

impl PointRow {
    /// `100·|ca − ref|/|ref|`.
    pub fn percent_error(&self) -> Option<f64> {
        self.reference.map(|r| percent_error(self.approximant, r))
    }
}

pub fn percent_error(value: Complex64, reference: Complex64) -> f64 {
    100.0 * (value - reference).norm() / reference.norm()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointTable {
    pub title: String,
    pub reference_name: String,
    pub rows: Vec<PointRow>,
}

impl PointTable {
    pub fn row_at(&self, x: f64, y: f64) -> Option<&PointRow> {
        self.rows.iter().find(|r| r.x == Complex64::new(x, 0.0) && r.y == Complex64::new(y, 0.0))
    }
}

/// One line of the `Li₂,₂(1,1)` acceleration table.
#[derive(Debug, Clone, PartialEq)]
pub struct Li22Row {
    pub order: usize,
    pub approximant: f64,
    pub partial_sum: f64,
    pub terms: usize,
}

/// Names accepted by [`run`].
pub const DEMOS: &[&str] = &["exp", "sin", "sinh", "log", "f1", "f1t", "f2", "f2ac", "li22", "ising", "cm2", "2f1"];

pub enum DemoOutput {
    Points(PointTable),
    Li22(Vec<Li22Row>),
}

/// Runs a named demo at the given order; `center` applies to the elementary demos.
pub fn run(name: &str, order: usize, center: Option<(f64, f64)>, backend: Backend) -> Result<DemoOutput> {
    let elementary = |kind| elementary_demo(kind, order, center, backend).map(DemoOutput::Points);
    match name {
        "exp" => elementary(Elementary::ExpHalfSum),
        "sin" => elementary(Elementary::SinHalfSum),
        "sinh" => elementary(Elementary::SinhHalfSum),
        "log" => elementary(Elementary::LogOnePlusSum),
        "f1" => f1_demo(order).map(DemoOutput::Points),
        "f1t" => f1_continuation_demo(order).map(DemoOutput::Points),
        "f2" => f2_demo(order).map(DemoOutput::Points),
        "f2ac" => f2ac_demo(order).map(DemoOutput::Points),
        "li22" => li22_demo(&[order]).map(DemoOutput::Li22),
        "ising" => ising_demo(order).map(DemoOutput::Points),
        "cm2" => cm2_demo(order).map(DemoOutput::Points),
        "2f1" => gauss_2f1_demo(order).map(DemoOutput::Points),
        other => Err(Error::InvalidInput(format!("unknown demo '{other}' (known: {})", DEMOS.join(", ")))),
    }
}

fn grid(xs: &[f64], ys: &[f64]) -> Vec<(f64, f64)> {
    xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect()
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn elementary_grid(kind: Elementary) -> Vec<(f64, f64)> {
    match kind {
        Elementary::ExpHalfSum => grid(&[0.0, 3.0, 6.0, 9.0], &[0.0, 3.0, 6.0, 9.0]),
        Elementary::SinHalfSum | Elementary::SinhHalfSum => {
            let v = [0.1, 1.6, 3.1, 4.6];
            grid(&v, &v)
        }
        Elementary::LogOnePlusSum => {
            let v = [0.1, 1.1, 2.1, 3.1];
            grid(&v, &v)
        }
    }
}

fn elementary_reference(kind: Elementary, x: f64, y: f64) -> f64 {
    let h = 0.5 * (x + y);
    match kind {
        Elementary::ExpHalfSum => h.exp(),
        Elementary::SinHalfSum => h.sin(),
        Elementary::SinhHalfSum => h.sinh(),
        Elementary::LogOnePlusSum => (1.0 + x + y).ln(),
    }
}

/// Evaluator over real points for either backend.
pub enum Fitted {
    Exact(FittedWorkflow<Rational>),
    Float(FittedWorkflow<f64>),
}

impl Fitted {
    pub fn evaluate_real(&self, x: f64, y: f64) -> Result<f64> {
        match self {
            Fitted::Exact(f) => f.evaluate_precise_f64(x, y),
            Fitted::Float(f) => Ok(f.evaluate(real(x), real(y))?.re),
        }
    }

    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Result<Complex64> {
        match self {
            Fitted::Exact(f) => f.evaluate(x, y),
            Fitted::Float(f) => f.evaluate(x, y),
        }
    }
}

/// The same series with every binary64 value converted exactly.
pub fn exact_from_float(series: &DoubleSeries<f64>) -> Result<DoubleSeries<Rational>> {
    let exact = |v: f64| Rational::from_f64(v).ok_or_else(|| Error::InvalidInput(format!("non-finite value {v}")));
    let center = (exact(series.center().0)?, exact(series.center().1)?);
    let mut converted = DoubleSeries::zero(center, series.degree());
    for (m, n, c) in series.terms() {
        converted.set(m, n, exact(*c)?)?;
    }
    Ok(converted)
}

/// Adds `1` when the constant term vanishes, as the elementary tables do.
fn unit_offset_workflow<T: Scalar>(series: &DoubleSeries<T>) -> Result<Workflow<T>> {
    let vanishing = series.coefficient(0, 0).is_some_and(|c| c.is_zero());
    Ok(Workflow::new(false, Poly2::parse(if vanishing { "1" } else { "0" })?))
}

/// Fits a series whose coefficients are only known in binary64.
pub fn fit_float_series(series: &DoubleSeries<f64>, order: usize, backend: Backend) -> Result<Fitted> {
    match backend {
        Backend::Float => unit_offset_workflow(series)?.fit(series, order).map(Fitted::Float),
        Backend::Exact => {
            let converted = exact_from_float(series)?;
            unit_offset_workflow(&converted)?.fit(&converted, order).map(Fitted::Exact)
        }
    }
}

/// `exp`, `sin`, `sinh` or `log` table, fitted at the origin or at `center`.
pub fn elementary_demo(kind: Elementary, order: usize, center: Option<(f64, f64)>, backend: Backend) -> Result<PointTable> {
    let degree = 2 * order + 1;
    let fitted = match center {
        Some(c) if c != (0.0, 0.0) => fit_float_series(&elementary_series_at(kind, c, degree), order, backend)?,
        _ => {
            let series = elementary_series(kind, degree);
            match backend {
                Backend::Exact => Fitted::Exact(unit_offset_workflow(&series)?.fit(&series, order)?),
                Backend::Float => {
                    let series = series.to_float();
                    Fitted::Float(unit_offset_workflow(&series)?.fit(&series, order)?)
                }
            }
        }
    };
    let rows = elementary_grid(kind)
        .into_iter()
        .map(|(x, y)| {
            Ok(PointRow {
                label: None,
                x: real(x),
                y: real(y),
                approximant: real(fitted.evaluate_real(x, y)?),
                reference: Some(real(elementary_reference(kind, x, y))),
            })
        })
        .collect::<Result<_>>()?;
    let (a, b) = center.unwrap_or((0.0, 0.0));
    Ok(PointTable {
        title: format!("[{order}/{order}] of {} around ({a}, {b})", kind.label()),
        reference_name: "Function".into(),
        rows,
    })
}

fn exact_fit(series: &DoubleSeries<Rational>, order: usize) -> Result<FittedWorkflow<Rational>> {
    Workflow::default().fit(series, order)
}

fn spec_rows(
    spec: &GeneratorSpec,
    fitted: &FittedWorkflow<Rational>,
    points: &[(f64, f64)],
    depth: usize,
) -> Result<Vec<PointRow>> {
    points
        .iter()
        .map(|&(x, y)| {
            Ok(PointRow {
                label: None,
                x: real(x),
                y: real(y),
                approximant: real(fitted.evaluate_precise_f64(x, y)?),
                reference: Some(spec.reference(real(x), real(y), depth)?),
            })
        })
        .collect()
}

fn exact_spec_series(spec: &GeneratorSpec) -> Result<DoubleSeries<Rational>> {
    match spec.generate()? {
        crate::generators::Generated::Exact(s) => Ok(s),
        _ => Err(Error::InvalidInput(format!("generator '{}' does not give an exact bivariate series", spec.name))),
    }
}

/// Appell `F₁` around the origin against its depth-100 partial sum.
pub fn f1_demo(order: usize) -> Result<PointTable> {
    let spec = GeneratorSpec::new("f1", 2 * order + 1)?;
    let fitted = exact_fit(&exact_spec_series(&spec)?, order)?;
    let v = [0.1, 0.34, 0.58, 0.82];
    let points: Vec<_> = grid(&v, &v).into_iter().filter(|&p| p != (0.82, 0.82)).collect();
    Ok(PointTable {
        title: format!("[{order}/{order}] of {} around (0, 0)", spec.describe()),
        reference_name: "Series".into(),
        rows: spec_rows(&spec, &fitted, &points, 100)?,
    })
}

/// Appell `F₁` outside the unit bidisc against the transformed series.
pub fn f1_continuation_demo(order: usize) -> Result<PointTable> {
    let spec = GeneratorSpec::new("f1", 2 * order + 1)?;
    let fitted = exact_fit(&exact_spec_series(&spec)?, order)?;
    let p = |k| spec.param(k);
    let transformed = appell_f1_transformed(p("a")?, p("b1")?, p("b2")?, p("c")?, 2 * order + 1)?;
    let points = grid(&[-1.0, -1.5, -2.0], &[-1.0, -1.5, -2.0, -2.5, -3.0]);
    let rows = points
        .into_iter()
        .map(|(x, y)| {
            Ok(PointRow {
                label: None,
                x: real(x),
                y: real(y),
                approximant: real(fitted.evaluate_precise_f64(x, y)?),
                reference: Some(transformed.evaluate_partial_sum(real(x), real(y))?),
            })
        })
        .collect::<Result<_>>()?;
    Ok(PointTable {
        title: format!("[{order}/{order}] of {} against the transformed series", spec.describe()),
        reference_name: "Transformed".into(),
        rows,
    })
}

/// Appell `F₂` around the origin against its depth-150 partial sum.
pub fn f2_demo(order: usize) -> Result<PointTable> {
    let spec = GeneratorSpec::new("f2", 2 * order + 1)?;
    let fitted = exact_fit(&exact_spec_series(&spec)?, order)?;
    let points = [
        (-0.6, -0.2),
        (-0.6, 0.2),
        (-0.2, -0.6),
        (-0.2, -0.2),
        (-0.2, 0.2),
        (-0.2, 0.6),
        (0.2, -0.6),
        (0.2, -0.2),
        (0.2, 0.2),
        (0.6, -0.2),
        (0.6, 0.2),
    ];
    Ok(PointTable {
        title: format!("[{order}/{order}] of {} around (0, 0)", spec.describe()),
        reference_name: "Series".into(),
        rows: spec_rows(&spec, &fitted, &points, 150)?,
    })
}

/// Whether `(x, y)` lies where all three continuation series converge.
pub fn f2ac_converges(x: f64, y: f64) -> bool {
    let (ax, ay) = (x.abs(), y.abs());
    let r = ax / ay;
    1.0 / ax < 1.0 && r < 1.0 && r < (x / (x + 1.0)).abs() && 1.0 / ay < 1.0 && r + 1.0 / ay < 1.0
}

/// Appell `F₂` at large arguments assembled from three continuation approximants.
///
/// Rows inside the convergence region carry the partial-sum reference.
pub fn f2ac_demo(order: usize) -> Result<PointTable> {
    let spec = GeneratorSpec::new("f2ac1", 2 * order + 1)?;
    let p = |k| spec.param(k);
    let components = appell_f2_ac_components(p("a")?, p("b1")?, p("b2")?, p("c1")?, p("c2")?, 2 * order + 1)?;
    let approximants: Vec<ChisholmApproximant<Rational>> = components
        .iter()
        .map(|c| Ok(fit_diagonal(&c.series, order)?.0))
        .collect::<Result<_>>()?;
    let points = [
        (5.0, 5.0),
        (5.0, 15.0),
        (15.0, 5.0),
        (15.0, 15.0),
        (-15.0, 5.0),
        (-15.0, 15.0),
        (-5.0, 5.0),
        (-5.0, 15.0),
        (-15.0, -15.0),
        (-15.0, -5.0),
        (-5.0, -15.0),
        (-5.0, -5.0),
        (5.0, -15.0),
        (5.0, -5.0),
        (15.0, -15.0),
        (15.0, -5.0),
    ];
    let rows = points
        .iter()
        .map(|&(x, y)| {
            let inside = f2ac_converges(x, y);
            let (zx, zy) = (real(x), real(y));
            let reference = if inside {
                let mut total = Complex64::new(0.0, 0.0);
                for c in &components {
                    total += c.evaluate_partial_sum(zx, zy)?;
                }
                Some(total)
            } else {
                None
            };
            Ok(PointRow {
                label: Some(if inside { "True" } else { "False" }.into()),
                x: zx,
                y: zy,
                approximant: assemble(&components, &approximants, zx, zy)?,
                reference,
            })
        })
        .collect::<Result<_>>()?;
    Ok(PointTable {
        title: format!("[{order}/{order}] continuation of {}", spec.describe().replacen("f2ac1", "f2", 1)),
        reference_name: "Series".into(),
        rows,
    })
}

/// `Li₂,₂(1,1)` from `1+x+y+Li₂,₂(x−y, x+y)` against same-budget partial sums.
pub fn li22_demo(orders: &[usize]) -> Result<Vec<Li22Row>> {
    let workflow = Workflow::new(true, Poly2::parse("1+x+y")?);
    orders
        .iter()
        .map(|&order| {
            let fitted = workflow.fit(&li22(2 * order + 1), order)?;
            let terms = 2 * order + 1;
            Ok(Li22Row {
                order,
                approximant: fitted.evaluate_precise_f64(1.0, 1.0)?,
                partial_sum: li22_partial_sum_at_one(terms),
                terms: terms * terms,
            })
        })
        .collect()
}

/// Exact value used as the acceleration target.
pub fn li22_target() -> f64 {
    li22_at_one()
}

fn rotated_demo(
    title: String,
    series: DoubleSeries<Rational>,
    offset: &str,
    order: usize,
    points: &[(f64, f64)],
    reference: impl Fn(f64, f64) -> f64,
) -> Result<PointTable> {
    let fitted = Workflow::new(true, Poly2::parse(offset)?).fit(&series, order)?;
    let rows = points
        .iter()
        .map(|&(x, y)| {
            Ok(PointRow {
                label: None,
                x: real(x),
                y: real(y),
                approximant: real(fitted.evaluate_precise_f64(x, y)?),
                reference: Some(real(reference(x, y))),
            })
        })
        .collect::<Result<_>>()?;
    Ok(PointTable { title, reference_name: "Function".into(), rows })
}

/// Legendre generating function `Σ P_l(z₁) z₂^l` via rotation and the `x+y` offset.
pub fn ising_demo(order: usize) -> Result<PointTable> {
    let v = [0.01, 0.21, 0.41, 0.61, 0.81];
    rotated_demo(
        format!("[{order}/{order}] of sum P_l(z1) z2^l"),
        ising_susceptibility(2 * order + 1),
        "x+y",
        order,
        &grid(&v, &v),
        |x, y| (1.0 - 2.0 * x * y + y * y).sqrt().recip(),
    )
}

/// `1/(e^{z₁z₂} − z₂)` via rotation.
pub fn cm2_demo(order: usize) -> Result<PointTable> {
    let points = grid(&[0.1, 0.4, 0.7, 1.0, 1.3, 1.6, 1.9], &[0.1, 1.1, 2.1]);
    rotated_demo(
        format!("[{order}/{order}] of 1/(exp(z1 z2) - z2)"),
        cm2_function(2 * order + 1)?,
        "0",
        order,
        &points,
        |x, y| ((x * y).exp() - y).recip(),
    )
}

/// Padé continuation of `₂F₁(1/2, 1/3; 1/5; z)` to `z = (1 − i√3)/2`.
pub fn gauss_2f1_demo(order: usize) -> Result<PointTable> {
    let spec = GeneratorSpec::new("2f1", 2 * order + 1)?;
    let p = |k| spec.param(k);
    let series = gauss_2f1(p("a")?, p("b")?, p("c")?, 2 * order + 1)?;
    let approximant = pade::fit_diagonal(&series, order)?;
    let z = Complex64::new(0.5, -(3f64).sqrt() / 2.0);
    let exact_z = crate::precise::complex_from_f64(z)?;
    Ok(PointTable {
        title: format!("[{order}/{order}] Pade of {}", spec.describe()),
        reference_name: "Reference".into(),
        rows: vec![PointRow {
            label: Some("z".into()),
            x: z,
            y: Complex64::new(0.0, 0.0),
            approximant: approximant.evaluate_precise(&exact_z)?,
            reference: None,
        }],
    })
}
