//! Deterministic number and table rendering.

use chisholm::demos::{Li22Row, PointRow, PointTable};
use clap::ValueEnum;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Markdown,
}

/// Fixed notation with `digits` significant digits, scientific outside `[1e-5, 1e10)`.
pub fn sig(value: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if value == 0.0 {
        return "0".into();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, value);
    let exponent: i32 = sci.split_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if !(-5..10).contains(&exponent) {
        return sci;
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    format!("{value:.decimals$}")
}

pub fn complex(value: Complex64, digits: usize) -> String {
    if value.im == 0.0 {
        return sig(value.re, digits);
    }
    let im = sig(value.im.abs(), digits);
    let sign = if value.im < 0.0 { '-' } else { '+' };
    if value.re == 0.0 {
        return format!("{}{im}i", if sign == '-' { "-" } else { "" });
    }
    format!("{}{sign}{im}i", sig(value.re, digits))
}

/// Two significant digits in scientific form, as error columns are printed.
pub fn error(value: f64) -> String {
    if value == 0.0 {
        "0".into()
    } else {
        format!("{value:.1e}")
    }
}

/// Relative error ×100, or the absolute error when the reference vanishes.
pub fn percent_error(value: Complex64, reference: Complex64) -> f64 {
    if reference.norm() == 0.0 {
        (value - reference).norm()
    } else {
        100.0 * (value - reference).norm() / reference.norm()
    }
}

/// One rendered table row; `None` cells print as `n/a`.
pub struct Row {
    pub label: Option<String>,
    pub x: Complex64,
    pub y: Complex64,
    pub value: Result<Complex64, String>,
    pub reference: Option<Complex64>,
}

impl From<&PointRow> for Row {
    fn from(r: &PointRow) -> Self {
        Row { label: r.label.clone(), x: r.x, y: r.y, value: Ok(r.approximant), reference: r.reference }
    }
}

fn cells(row: &Row, digits: usize) -> (String, String, String) {
    let value = match &row.value {
        Ok(v) => complex(*v, digits),
        Err(flag) => flag.clone(),
    };
    let reference = row.reference.map_or_else(|| "n/a".to_string(), |r| complex(r, digits));
    let err = match (&row.value, row.reference) {
        (Ok(v), Some(r)) => error(percent_error(*v, r)),
        _ => "n/a".into(),
    };
    (value, reference, err)
}

/// Shortest round-trip rendering, so grid points print as typed.
pub fn coordinate(z: Complex64) -> String {
    if z.im == 0.0 {
        return format!("{}", z.re);
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", z.re, z.im.abs())
}

pub fn point_table(
    title: &str,
    reference_name: &str,
    rows: &[Row],
    format: Format,
    digits: usize,
) -> String {
    let labelled = rows.iter().any(|r| r.label.is_some());
    let mut out = String::new();
    match format {
        Format::Csv => {
            if labelled {
                out.push_str("label,");
            }
            out.push_str(&format!("x,y,ca,{},percent_error\n", reference_name.to_lowercase()));
            for row in rows {
                let (v, r, e) = cells(row, digits);
                if labelled {
                    out.push_str(&format!("{},", row.label.as_deref().unwrap_or("")));
                }
                out.push_str(&format!("{},{},{v},{r},{e}\n", coordinate(row.x), coordinate(row.y)));
            }
        }
        Format::Markdown => {
            out.push_str(&format!("### {title}\n\n"));
            let lead = if labelled { "| label " } else { "" };
            out.push_str(&format!("{lead}| {{x,y}} | CA | {reference_name} | % Error |\n"));
            out.push_str(if labelled { "|---|---|---|---|---|\n" } else { "|---|---|---|---|\n" });
            for row in rows {
                let (v, r, e) = cells(row, digits);
                if labelled {
                    out.push_str(&format!("| {} ", row.label.as_deref().unwrap_or("")));
                }
                out.push_str(&format!("| {{{},{}}} | {v} | {r} | {e} |\n", coordinate(row.x), coordinate(row.y)));
            }
        }
    }
    out
}

pub fn demo_table(table: &PointTable, format: Format, digits: usize) -> String {
    let rows: Vec<Row> = table.rows.iter().map(Row::from).collect();
    point_table(&table.title, &table.reference_name, &rows, format, digits)
}

pub fn li22_table(rows: &[Li22Row], target: f64, format: Format, digits: usize) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("order,ca,partial_sum,terms\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.order,
                    sig(r.approximant, digits),
                    sig(r.partial_sum, digits),
                    r.terms
                ));
            }
        }
        Format::Markdown => {
            out.push_str(&format!("### Li22(1,1) = pi^4/120 = {}\n\n", sig(target, digits)));
            out.push_str("| Order | CA | Partial sum | Terms |\n|---|---|---|---|\n");
            for r in rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    r.order,
                    sig(r.approximant, digits),
                    sig(r.partial_sum, digits),
                    r.terms
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(8103.083928, 10), "8103.083928");
        assert_eq!(sig(0.09983341665, 10), "0.09983341665");
        assert_eq!(sig(-0.9936946941, 10), "-0.9936946941");
        assert_eq!(sig(9.99999999999, 10), "10.00000000");
        assert_eq!(sig(1.5e-7, 3), "1.50e-7");
        assert_eq!(sig(2.5e12, 2), "2.5e12");
        assert_eq!(sig(0.0, 10), "0");
    }

    #[test]
    fn complex_values() {
        let z = Complex64::new(-0.04109494941, 0.03474758527);
        assert_eq!(complex(z, 10), "-0.04109494941+0.03474758527i");
        assert_eq!(complex(Complex64::new(0.5, -0.25), 3), "0.500-0.250i");
        assert_eq!(complex(Complex64::new(0.0, -2.0), 2), "-2.0i");
    }

    #[test]
    fn error_column() {
        assert_eq!(error(7.5e-6), "7.5e-6");
        assert_eq!(error(0.00037), "3.7e-4");
        assert_eq!(percent_error(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)), 1.0);
    }

    #[test]
    fn empty_table_has_header_only() {
        assert_eq!(point_table("t", "Function", &[], Format::Csv, 10), "x,y,ca,function,percent_error\n");
    }
}
