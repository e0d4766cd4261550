//! JSON documents for series and approximants.
//!
//! Coefficients are written as `"p/q"` strings by the exact backend and as
//! numbers by the float backend; both are accepted on input.

use serde_json::{json, Map, Value};

use crate::chisholm::ChisholmApproximant;
use crate::error::{Error, Result};
use crate::pade::PadeApproximant;
use crate::scalar::Scalar;
use crate::series::{DoubleSeries, Poly2, UniSeries};
use crate::workflow::Workflow;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| invalid(format!("missing field '{key}'")))
}

fn as_object(value: &Value) -> Result<&Map<String, Value>> {
    value.as_object().ok_or_else(|| invalid("expected a JSON object"))
}

fn as_usize(value: &Value, what: &str) -> Result<usize> {
    value
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| invalid(format!("'{what}' must be a non-negative integer")))
}

fn as_array<'a>(value: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    value.as_array().ok_or_else(|| invalid(format!("'{what}' must be an array")))
}

fn pair<T: Scalar>(value: &Value, what: &str) -> Result<(T, T)> {
    match as_array(value, what)?.as_slice() {
        [a, b] => Ok((T::from_json(a)?, T::from_json(b)?)),
        _ => Err(invalid(format!("'{what}' must have two entries"))),
    }
}

fn vector<T: Scalar>(value: &Value, what: &str) -> Result<Vec<T>> {
    as_array(value, what)?.iter().map(T::from_json).collect()
}

fn grid<T: Scalar>(value: &Value, what: &str) -> Result<Vec<Vec<T>>> {
    as_array(value, what)?.iter().map(|row| vector(row, what)).collect()
}

/// `{"center": [a, b], "degree": D, "terms": [[m, n, c], ...], "unknown": [[m, n], ...]}`.
///
/// `unknown` is optional and lists indices inside the degree bound that were not supplied.
pub fn series_to_json<T: Scalar>(series: &DoubleSeries<T>) -> Value {
    let terms: Vec<Value> = series.terms().filter(|(_, _, c)| !c.is_zero()).map(|(m, n, c)| json!([m, n, c.to_json()])).collect();
    let mut unknown = Vec::new();
    for t in 0..=series.degree() {
        for n in 0..=t {
            if !series.is_known(t - n, n) {
                unknown.push(json!([t - n, n]));
            }
        }
    }
    let (a, b) = series.center();
    let mut doc = json!({
        "center": [a.to_json(), b.to_json()],
        "degree": series.degree(),
        "terms": terms,
    });
    if !unknown.is_empty() {
        doc["unknown"] = Value::Array(unknown);
    }
    doc
}

pub fn series_from_json<T: Scalar>(value: &Value) -> Result<DoubleSeries<T>> {
    let obj = as_object(value)?;
    let center = pair(field(obj, "center")?, "center")?;
    let degree = as_usize(field(obj, "degree")?, "degree")?;
    let mut terms = Vec::new();
    for term in as_array(field(obj, "terms")?, "terms")? {
        match as_array(term, "terms")?.as_slice() {
            [m, n, c] => terms.push((as_usize(m, "m")?, as_usize(n, "n")?, T::from_json(c)?)),
            _ => return Err(invalid("each term must be [m, n, c]")),
        }
    }
    let mut series = DoubleSeries::from_terms(center, degree, terms)?;
    if let Some(unknown) = obj.get("unknown") {
        for idx in as_array(unknown, "unknown")? {
            match as_array(idx, "unknown")?.as_slice() {
                [m, n] => series.forget(as_usize(m, "m")?, as_usize(n, "n")?),
                _ => return Err(invalid("each unknown index must be [m, n]")),
            }
        }
    }
    Ok(series)
}

/// `{"center": a, "degree": D, "terms": [[k, c], ...]}`.
pub fn uni_series_to_json<T: Scalar>(series: &UniSeries<T>) -> Value {
    let terms: Vec<Value> = series
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| json!([k, c.to_json()]))
        .collect();
    json!({
        "center": series.center.to_json(),
        "degree": series.coeffs.len().saturating_sub(1),
        "terms": terms,
    })
}

pub fn uni_series_from_json<T: Scalar>(value: &Value) -> Result<UniSeries<T>> {
    let obj = as_object(value)?;
    let center = T::from_json(field(obj, "center")?)?;
    let degree = as_usize(field(obj, "degree")?, "degree")?;
    let mut coeffs = vec![T::zero(); degree + 1];
    for term in as_array(field(obj, "terms")?, "terms")? {
        match as_array(term, "terms")?.as_slice() {
            [k, c] => {
                let k = as_usize(k, "k")?;
                let slot = coeffs.get_mut(k).ok_or_else(|| invalid(format!("term {k} exceeds degree {degree}")))?;
                *slot = T::from_json(c)?;
            }
            _ => return Err(invalid("each term must be [k, c]")),
        }
    }
    Ok(UniSeries::new(center, coeffs))
}

pub fn pade_to_json<T: Scalar>(pa: &PadeApproximant<T>) -> Value {
    let v = |c: &[T]| c.iter().map(Scalar::to_json).collect::<Vec<_>>();
    json!({
        "kind": "pade",
        "M": pa.order(),
        "center": pa.center().to_json(),
        "p": v(pa.numerator()),
        "q": v(pa.denominator()),
    })
}

pub fn pade_from_json<T: Scalar>(value: &Value) -> Result<PadeApproximant<T>> {
    let obj = as_object(value)?;
    expect_kind(obj, "pade")?;
    PadeApproximant::new(
        as_usize(field(obj, "M")?, "M")?,
        T::from_json(field(obj, "center")?)?,
        vector(field(obj, "p")?, "p")?,
        vector(field(obj, "q")?, "q")?,
    )
}

pub fn chisholm_to_json<T: Scalar>(ca: &ChisholmApproximant<T>) -> Value {
    let g = |grid: &[Vec<T>]| grid.iter().map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>();
    let (a, b) = ca.center();
    json!({
        "kind": "chisholm",
        "M": ca.order(),
        "center": [a.to_json(), b.to_json()],
        "num": g(ca.numerator()),
        "den": g(ca.denominator()),
    })
}

pub fn chisholm_from_json<T: Scalar>(value: &Value) -> Result<ChisholmApproximant<T>> {
    let obj = as_object(value)?;
    expect_kind(obj, "chisholm")?;
    ChisholmApproximant::new(
        as_usize(field(obj, "M")?, "M")?,
        pair(field(obj, "center")?, "center")?,
        grid(field(obj, "num")?, "num")?,
        grid(field(obj, "den")?, "den")?,
    )
}

fn expect_kind(obj: &Map<String, Value>, kind: &str) -> Result<()> {
    match field(obj, "kind")?.as_str() {
        Some(k) if k == kind => Ok(()),
        other => Err(invalid(format!("expected kind '{kind}', found {other:?}"))),
    }
}

/// Reads the `kind` tag of an approximant document.
pub fn approximant_kind(value: &Value) -> Result<&str> {
    as_object(value)?
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| invalid("approximant document has no 'kind'"))
}

/// A Chisholm document plus the optional `rotate_pm` and `offset` fields of a workflow fit.
pub fn fitted_to_json<T: Scalar>(approximant: &ChisholmApproximant<T>, workflow: &Workflow<T>) -> Value {
    let mut doc = chisholm_to_json(approximant);
    if workflow.rotate_pm {
        doc["rotate_pm"] = Value::Bool(true);
    }
    if !workflow.offset.is_zero() {
        doc["offset"] = Value::String(workflow.offset.to_string());
    }
    doc
}

/// Reads a Chisholm document; absent transform fields mean a plain fit.
pub fn fitted_from_json<T: Scalar>(value: &Value) -> Result<(ChisholmApproximant<T>, Workflow<T>)> {
    let approximant = chisholm_from_json(value)?;
    let obj = as_object(value)?;
    let rotate_pm = match obj.get("rotate_pm") {
        None => false,
        Some(v) => v.as_bool().ok_or_else(|| invalid("'rotate_pm' must be a boolean"))?,
    };
    let offset = match obj.get("offset") {
        None => Poly2::zero(),
        Some(v) => Poly2::parse(v.as_str().ok_or_else(|| invalid("'offset' must be a string"))?)?,
    };
    Ok((approximant, Workflow::new(rotate_pm, offset)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chisholm::fit_diagonal;
    use crate::generators::exp_half_sum;
    use crate::scalar::Rational;

    #[test]
    fn series_round_trip() {
        let mut s = exp_half_sum(5);
        s.forget(2, 2);
        let doc = series_to_json(&s);
        assert_eq!(series_from_json::<Rational>(&doc).unwrap(), s);
        let f = s.to_float();
        assert_eq!(series_from_json::<f64>(&series_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn mixed_coefficients() {
        let doc = serde_json::json!({"center": [0, "1/2"], "degree": 2, "terms": [[0, 0, "1"], [1, 0, 0.25]]});
        let s: DoubleSeries<Rational> = series_from_json(&doc).unwrap();
        assert_eq!(s.coefficient(1, 0), Some(&Rational::from_ratio(1, 4)));
        assert_eq!(s.coefficient(0, 2), Some(&Rational::from_ratio(0, 1)));
        assert_eq!(s.coefficient(0, 3), None);
        assert!(series_from_json::<Rational>(&serde_json::json!({"center": [0], "degree": 2, "terms": []})).is_err());
        assert!(series_from_json::<Rational>(&serde_json::json!({"center": [0, 0], "degree": 1, "terms": [[2, 0, 1]]})).is_err());
    }

    #[test]
    fn approximant_round_trip() {
        let (ca, _) = fit_diagonal(&exp_half_sum(5), 2).unwrap();
        let doc = chisholm_to_json(&ca);
        assert_eq!(approximant_kind(&doc).unwrap(), "chisholm");
        assert_eq!(chisholm_from_json::<Rational>(&doc).unwrap(), ca);
        let pa = ca.reduce_to_pade();
        assert_eq!(pade_from_json::<Rational>(&pade_to_json(&pa)).unwrap(), pa);
        assert!(pade_from_json::<Rational>(&doc).is_err());
        let fl = ca.to_float();
        assert_eq!(chisholm_from_json::<f64>(&chisholm_to_json(&fl)).unwrap(), fl);
    }

    #[test]
    fn workflow_round_trip() {
        let workflow = Workflow::new(true, Poly2::parse("1+x+y").unwrap());
        let fitted = workflow.fit(&crate::generators::li22(7), 3).unwrap();
        let doc = fitted_to_json(&fitted.approximant, &fitted.workflow);
        assert_eq!(doc["offset"], "1+x+y");
        let (ca, back) = fitted_from_json::<Rational>(&doc).unwrap();
        assert_eq!((ca, back), (fitted.approximant, workflow));
        let (_, plain) = fitted_from_json::<Rational>(&chisholm_to_json(&fitted_approx())).unwrap();
        assert_eq!(plain, Workflow::default());
    }

    fn fitted_approx() -> ChisholmApproximant<Rational> {
        fit_diagonal(&exp_half_sum(3), 1).unwrap().0
    }
}
