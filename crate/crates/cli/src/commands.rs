//! Verb implementations.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use chisholm::chisholm::ChisholmApproximant;
use chisholm::demos::{self, Backend, DemoOutput};
use chisholm::generators::{default_params, Generated, GeneratorSpec, GENERATORS};
use chisholm::io;
use chisholm::pade;
use chisholm::precise::complex_from_f64;
use chisholm::scalar::parse_rational;
use chisholm::series::{DoubleSeries, Poly2, UniSeries};
use chisholm::workflow::Workflow;
use chisholm::{Error, Rational, Scalar};
use num_complex::{Complex, Complex64};
use serde_json::Value;

use crate::render::{self, Row};
use crate::{BackendArg, Cli, Command, FitOptions, Source};

pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::InvalidInput(_) => 3,
                Error::InsufficientTerms { .. } => 4,
                Error::SingularSystem { .. } => 5,
                Error::NotNormalized(_) => 6,
                Error::PoleHit => 7,
                Error::ParameterPole { .. } => 8,
                Error::DimensionMismatch { .. } => 9,
            };
        }
        if cause.is::<serde_json::Error>() {
            return 3;
        }
        if cause.is::<std::io::Error>() {
            return 10;
        }
    }
    1
}

pub fn hint(err: &anyhow::Error) -> Option<&'static str> {
    match err.chain().find_map(|c| c.downcast_ref::<Error>())? {
        Error::NotNormalized(_) => Some("pass --offset \"1+x+y\" (or --offset 1) so the constant term becomes 1"),
        Error::InsufficientTerms { .. } => Some("a [M/M] fit needs every coefficient up to total degree 2M+1; raise --degree or lower --order"),
        Error::SingularSystem { .. } => Some("try a different order or the --rotate-pm substitution"),
        _ => None,
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let cap = cli.max_order;
    let check_order = |order: usize| -> Result<()> {
        if order > cap {
            return Err(Error::InvalidInput(format!("order {order} exceeds CHISHOLM_MAX_ORDER={cap}")).into());
        }
        Ok(())
    };
    match cli.command {
        Command::Fit { source, fit, output, points, precision } => {
            check_order(fit.order)?;
            let points = parse_points(&points)?;
            let model = fit_model(load_series(&source, &fit)?, &fit)?;
            write_json(&model.to_json(), output.as_deref())?;
            if !points.is_empty() {
                print!("{}", evaluation_csv(&model, &points, precision)?);
            }
            Ok(())
        }
        Command::Eval { file, points, precision } => {
            let model = Model::from_json(&read_json(&file)?)?;
            print!("{}", evaluation_csv(&model, &parse_points(&points)?, precision)?);
            Ok(())
        }
        Command::ErrorTable { generator, fit, degree, center, params, grid, xs, ys, depth, format, precision } => {
            check_order(fit.order)?;
            let spec = generator_spec(&generator, degree.unwrap_or(2 * fit.order + 1), center.as_deref(), &params)?;
            let series = match spec.generate()? {
                Generated::Exact(s) => SeriesInput::Exact(s),
                Generated::Float(s) => SeriesInput::Float(s),
                Generated::Univariate(_) => bail!(Error::InvalidInput(format!("'{generator}' is univariate; use pade-fit"))),
            };
            let model = fit_model(series, &fit)?;
            let xs = parse_list(xs.as_deref().or(grid.as_deref()).unwrap_or(""))?;
            let ys = parse_list(ys.as_deref().or(grid.as_deref()).unwrap_or(""))?;
            let mut rows = Vec::new();
            for &x in &xs {
                for &y in &ys {
                    let (zx, zy) = (Complex64::new(x, 0.0), Complex64::new(y, 0.0));
                    let value = match model.evaluate(&(exact_real(x)?, exact_real(y)?)) {
                        Ok(v) => Ok(v),
                        Err(Error::PoleHit) => Err("pole".to_string()),
                        Err(e) => return Err(e.into()),
                    };
                    rows.push(Row { label: None, x: zx, y: zy, value, reference: spec.reference(zx, zy, depth).ok() });
                }
            }
            let title = format!("[{0}/{0}] of {1}", fit.order, spec.describe());
            print!("{}", render::point_table(&title, "Function", &rows, format, precision));
            Ok(())
        }
        Command::Gen { list: true, .. } => {
            for (name, about) in GENERATORS {
                let params: Vec<String> = default_params(name).iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("{name:<6} {about}{}", if params.is_empty() { String::new() } else { format!(" [{}]", params.join(",")) });
            }
            Ok(())
        }
        Command::Gen { name, degree, center, params, output, .. } => {
            let name = name.ok_or_else(|| anyhow!("missing generator name"))?;
            let degree = degree.ok_or_else(|| anyhow!("missing --degree"))?;
            let spec = generator_spec(&name, degree, center.as_deref(), &params)?;
            let doc = match spec.generate()? {
                Generated::Exact(s) => io::series_to_json(&s),
                Generated::Float(s) => io::series_to_json(&s),
                Generated::Univariate(s) => io::uni_series_to_json(&s),
            };
            write_json(&doc, output.as_deref())
        }
        Command::Demo { name, order, center, backend, format, precision } => {
            let center = center.as_deref().map(parse_center_f64).transpose()?;
            let backend = match backend {
                BackendArg::Exact => Backend::Exact,
                BackendArg::Float => Backend::Float,
            };
            if name == "li22" {
                let orders = order.map_or_else(|| vec![5, 10, 15, 20], |o| vec![o]);
                for &o in &orders {
                    check_order(o)?;
                }
                let rows = demos::li22_demo(&orders)?;
                print!("{}", render::li22_table(&rows, demos::li22_target(), format, precision));
                return Ok(());
            }
            let order = order.unwrap_or(10);
            check_order(order)?;
            match demos::run(&name, order, center, backend)? {
                DemoOutput::Points(table) => print!("{}", render::demo_table(&table, format, precision)),
                DemoOutput::Li22(rows) => print!("{}", render::li22_table(&rows, demos::li22_target(), format, precision)),
            }
            Ok(())
        }
        Command::PadeFit { source, order, backend, output } => {
            check_order(order)?;
            let doc = match (load_univariate(&source, order)?, backend) {
                (series, BackendArg::Exact) => io::pade_to_json(&pade::fit_diagonal(&series, order)?),
                (series, BackendArg::Float) => {
                    let float = UniSeries::new(series.center.to_f64(), series.coeffs.iter().map(Scalar::to_f64).collect());
                    io::pade_to_json(&pade::fit_diagonal(&float, order)?)
                }
            };
            write_json(&doc, output.as_deref())
        }
        Command::PadeEval { file, points, precision } => {
            let doc = read_json(&file)?;
            let exact = !has_float_entries(&doc, &["p", "q"]);
            let mut out = String::from("z,value\n");
            for text in &points {
                let z = parse_coordinate(text)?;
                let value = if exact {
                    io::pade_from_json::<Rational>(&doc)?.evaluate_precise(&z)?
                } else {
                    io::pade_from_json::<f64>(&doc)?.evaluate(to_f64(&z))?
                };
                out.push_str(&format!("{},{}\n", render::coordinate(to_f64(&z)), render::complex(value, precision)));
            }
            print!("{out}");
            Ok(())
        }
    }
}

enum SeriesInput {
    Exact(DoubleSeries<Rational>),
    Float(DoubleSeries<f64>),
}

/// A fitted approximant with the transforms needed to evaluate it in original variables.
enum Model {
    Exact(ChisholmApproximant<Rational>, Workflow<Rational>),
    Float(ChisholmApproximant<f64>, Workflow<f64>),
}

type Point = (Complex<Rational>, Complex<Rational>);

impl Model {
    fn evaluate(&self, (x, y): &Point) -> chisholm::Result<Complex64> {
        match self {
            Model::Exact(ca, wf) => wf.evaluate_precise(ca, x, y),
            Model::Float(ca, wf) => wf.evaluate(ca, to_f64(x), to_f64(y)),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Model::Exact(ca, wf) => io::fitted_to_json(ca, wf),
            Model::Float(ca, wf) => io::fitted_to_json(ca, wf),
        }
    }

    fn from_json(doc: &Value) -> Result<Self> {
        Ok(if has_float_entries(doc, &["num", "den"]) {
            let (ca, wf) = io::fitted_from_json(doc)?;
            Model::Float(ca, wf)
        } else {
            let (ca, wf) = io::fitted_from_json(doc)?;
            Model::Exact(ca, wf)
        })
    }
}

fn has_float_entries(doc: &Value, keys: &[&str]) -> bool {
    fn walk(v: &Value) -> bool {
        match v {
            Value::Number(n) => !n.is_i64() && !n.is_u64(),
            Value::Array(items) => items.iter().any(walk),
            _ => false,
        }
    }
    keys.iter().any(|k| doc.get(k).is_some_and(walk))
}

fn fit_model(series: SeriesInput, options: &FitOptions) -> Result<Model> {
    let offset = options.offset.as_deref().unwrap_or("0");
    let model = match (series, options.backend) {
        (SeriesInput::Exact(s), BackendArg::Exact) => exact_fit(&s, offset, options)?,
        (SeriesInput::Float(s), BackendArg::Exact) => exact_fit(&demos::exact_from_float(&s)?, offset, options)?,
        (SeriesInput::Exact(s), BackendArg::Float) => float_fit(&s.to_float(), offset, options)?,
        (SeriesInput::Float(s), BackendArg::Float) => float_fit(&s, offset, options)?,
    };
    Ok(model)
}

fn report(report: &chisholm::chisholm::FitReport) {
    let residual = report.residual_max.map_or_else(String::new, |r| format!(", max residual {}", render::error(r)));
    eprintln!(
        "fit: order {}, {} equations ({} symmetrized), {}x{} system{residual}",
        report.order, report.equations_total, report.equations_symmetrized, report.system_size, report.system_size
    );
}

fn exact_fit(series: &DoubleSeries<Rational>, offset: &str, options: &FitOptions) -> Result<Model> {
    let workflow = Workflow::new(options.rotate_pm, Poly2::parse(offset)?);
    let fitted = workflow.fit(series, options.order)?;
    report(&fitted.report);
    Ok(Model::Exact(fitted.approximant, fitted.workflow))
}

fn float_fit(series: &DoubleSeries<f64>, offset: &str, options: &FitOptions) -> Result<Model> {
    let workflow = Workflow::new(options.rotate_pm, Poly2::parse(offset)?);
    let fitted = workflow.fit(series, options.order)?;
    report(&fitted.report);
    Ok(Model::Float(fitted.approximant, fitted.workflow))
}

fn evaluation_csv(model: &Model, points: &[Point], precision: usize) -> Result<String> {
    let mut out = String::from("x,y,value\n");
    for p in points {
        let value = match model.evaluate(p) {
            Ok(v) => render::complex(v, precision),
            Err(Error::PoleHit) => "pole".into(),
            Err(e) => return Err(e.into()),
        };
        out.push_str(&format!(
            "{},{},{value}\n",
            render::coordinate(to_f64(&p.0)),
            render::coordinate(to_f64(&p.1))
        ));
    }
    Ok(out)
}

fn generator_spec(name: &str, degree: usize, center: Option<&str>, params: &[String]) -> Result<GeneratorSpec> {
    let mut spec = GeneratorSpec::new(name, degree)?;
    if let Some(c) = center {
        spec = spec.with_center(parse_center(c)?);
    }
    for p in params.iter().filter(|p| !p.is_empty()) {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("parameter '{p}' must look like key=value")))?;
        spec = spec.with_param(k.trim(), parse_rational(v.trim())?)?;
    }
    Ok(spec)
}

fn load_series(source: &Source, fit: &FitOptions) -> Result<SeriesInput> {
    if let Some(name) = &source.generator {
        let spec = generator_spec(name, source.degree.unwrap_or(2 * fit.order + 1), source.center.as_deref(), &source.params)?;
        return match spec.generate()? {
            Generated::Exact(s) => Ok(SeriesInput::Exact(s)),
            Generated::Float(s) => Ok(SeriesInput::Float(s)),
            Generated::Univariate(_) => bail!(Error::InvalidInput(format!("'{name}' is univariate; use pade-fit"))),
        };
    }
    let path = source.input.as_ref().ok_or_else(|| anyhow!("missing series file"))?;
    let doc = read_json(path)?;
    Ok(match fit.backend {
        BackendArg::Exact => SeriesInput::Exact(io::series_from_json(&doc).with_context(|| format!("reading {}", path.display()))?),
        BackendArg::Float => SeriesInput::Float(io::series_from_json(&doc).with_context(|| format!("reading {}", path.display()))?),
    })
}

fn load_univariate(source: &Source, order: usize) -> Result<UniSeries<Rational>> {
    if let Some(name) = &source.generator {
        let spec = generator_spec(name, source.degree.unwrap_or(2 * order), source.center.as_deref(), &source.params)?;
        return match spec.generate()? {
            Generated::Univariate(s) => Ok(s),
            _ => bail!(Error::InvalidInput(format!("'{name}' is bivariate; use fit"))),
        };
    }
    let path: &PathBuf = source.input.as_ref().ok_or_else(|| anyhow!("missing series file"))?;
    Ok(io::uni_series_from_json(&read_json(path)?).with_context(|| format!("reading {}", path.display()))?)
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn write_json(doc: &Value, output: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(doc)? + "\n";
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_center(text: &str) -> Result<(Rational, Rational)> {
    match text.split(',').map(str::trim).collect::<Vec<_>>().as_slice() {
        [a, b] => Ok((parse_rational(a)?, parse_rational(b)?)),
        _ => Err(Error::InvalidInput(format!("centre '{text}' must look like a,b")).into()),
    }
}

fn parse_center_f64(text: &str) -> Result<(f64, f64)> {
    let (a, b) = parse_center(text)?;
    Ok((a.to_f64(), b.to_f64()))
}

fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Ok(parse_rational(s)?.to_f64()))
        .collect()
}

fn exact_real(v: f64) -> Result<Complex<Rational>> {
    Ok(complex_from_f64(Complex64::new(v, 0.0))?)
}

/// A rational such as `1/3`, a decimal, or a complex number such as `0.5-0.8660254i`.
fn parse_coordinate(text: &str) -> Result<Complex<Rational>> {
    let text = text.trim();
    if let Ok(r) = parse_rational(text) {
        return Ok(Complex::new(r, Rational::from_integer(0.into())));
    }
    let z = Complex64::from_str(text).map_err(|_| Error::InvalidInput(format!("cannot read '{text}' as a number")))?;
    Ok(complex_from_f64(z)?)
}

fn parse_points(texts: &[String]) -> Result<Vec<Point>> {
    texts
        .iter()
        .map(|t| match t.split(',').collect::<Vec<_>>().as_slice() {
            [x, y] => Ok((parse_coordinate(x)?, parse_coordinate(y)?)),
            _ => Err(Error::InvalidInput(format!("point '{t}' must look like x,y")).into()),
        })
        .collect()
}

fn to_f64(z: &Complex<Rational>) -> Complex64 {
    Complex64::new(z.re.to_f64(), z.im.to_f64())
}
