//! JSON parsing and serialization for the CLI surface.
//!
//! Polynomials serialize as `{"mode": "rational"|"float", "coeffs": [...]}`
//! with coefficients leading-first; exact rationals render as JSON integers
//! when integral and `"num/den"` strings otherwise.  Complex numbers are
//! `{"re": ..., "im": ...}`; matrices are row-major arrays of rows.

use ffp::poly::{Multiset, Poly};
use ffp::scalar::{Rat, Scalar};
use ffp::series::TruncatedSeries;
use ffp::Mat;
use num_complex::Complex;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

pub type ParseResult<T> = Result<T, String>;

/// Exact rational from `"num/den"`, integer, or decimal strings.
pub fn rat_from_str(s: &str) -> ParseResult<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: num_bigint::BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad rational numerator in {s:?}"))?;
        let d: num_bigint::BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad rational denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int_part: num_bigint::BigInt = if int.is_empty() || int == "-" {
            0.into()
        } else {
            int.parse().map_err(|_| format!("bad decimal {s:?}"))?
        };
        let frac_digits = frac.trim_end_matches(|c: char| !c.is_ascii_digit());
        let frac_num: num_bigint::BigInt = if frac_digits.is_empty() {
            0.into()
        } else {
            frac_digits
                .parse()
                .map_err(|_| format!("bad decimal {s:?}"))?
        };
        let scale = num_bigint::BigInt::from(10u32).pow(frac_digits.len() as u32);
        let mag = Rat::new(int_part.abs() * &scale + frac_num, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: num_bigint::BigInt = s.parse().map_err(|_| format!("bad rational {s:?}"))?;
    Ok(Rat::from_integer(n))
}

pub fn rat_from_value(v: &Value) -> ParseResult<Rat> {
    match v {
        Value::String(s) => rat_from_str(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_int(i))
            } else {
                // shortest-decimal form keeps 0.5 exactly 1/2
                rat_from_str(&n.to_string())
            }
        }
        other => Err(format!("expected a rational scalar, got {other}")),
    }
}

pub fn f64_from_value(v: &Value) -> ParseResult<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| format!("bad number {n}")),
        Value::String(s) => Ok(rat_from_str(s)?.to_f64_lossy()),
        other => Err(format!("expected a number, got {other}")),
    }
}

fn array(v: &Value, what: &str) -> ParseResult<Vec<Value>> {
    v.as_array()
        .cloned()
        .ok_or_else(|| format!("expected a JSON array for {what}"))
}

fn parse_json(s: &str, what: &str) -> ParseResult<Value> {
    serde_json::from_str(s).map_err(|e| format!("bad JSON for {what}: {e}"))
}

/// Leading-first coefficient list → polynomial.
pub fn poly_rat_from_str(s: &str) -> ParseResult<Poly<Rat>> {
    let v = parse_json(s, "polynomial")?;
    let coeffs = array(&v, "polynomial")?
        .iter()
        .map(rat_from_value)
        .collect::<ParseResult<Vec<Rat>>>()?;
    if coeffs.is_empty() {
        return Err("polynomial needs at least one coefficient".into());
    }
    Ok(Poly::from_leading(coeffs))
}

pub fn poly_f64_from_str(s: &str) -> ParseResult<Poly<f64>> {
    let v = parse_json(s, "polynomial")?;
    let coeffs = array(&v, "polynomial")?
        .iter()
        .map(f64_from_value)
        .collect::<ParseResult<Vec<f64>>>()?;
    if coeffs.is_empty() {
        return Err("polynomial needs at least one coefficient".into());
    }
    Ok(Poly::from_leading(coeffs))
}

pub fn floats_from_str(s: &str, what: &str) -> ParseResult<Vec<f64>> {
    let v = parse_json(s, what)?;
    array(&v, what)?.iter().map(f64_from_value).collect()
}

pub fn rats_from_str(s: &str, what: &str) -> ParseResult<Vec<Rat>> {
    let v = parse_json(s, what)?;
    array(&v, what)?.iter().map(rat_from_value).collect()
}

pub fn usizes_from_str(s: &str, what: &str) -> ParseResult<Vec<usize>> {
    let v = parse_json(s, what)?;
    array(&v, what)?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| format!("expected nonnegative integers in {what}"))
        })
        .collect()
}

fn complex_f64_from_value(v: &Value) -> ParseResult<Complex<f64>> {
    match v {
        Value::Object(map) => {
            let re = map
                .get("re")
                .map(f64_from_value)
                .transpose()?
                .unwrap_or(0.0);
            let im = map
                .get("im")
                .map(f64_from_value)
                .transpose()?
                .unwrap_or(0.0);
            Ok(Complex::new(re, im))
        }
        other => Ok(Complex::new(f64_from_value(other)?, 0.0)),
    }
}

/// Multiset: array of numbers or `{re, im}` objects.
pub fn multiset_f64_from_str(s: &str) -> ParseResult<Multiset<f64>> {
    let v = parse_json(s, "multiset")?;
    let elems = array(&v, "multiset")?
        .iter()
        .map(complex_f64_from_value)
        .collect::<ParseResult<Vec<Complex<f64>>>>()?;
    Ok(Multiset::from_complex(elems))
}

pub fn multiset_rat_from_str(s: &str) -> ParseResult<Multiset<Rat>> {
    let v = parse_json(s, "multiset")?;
    let mut elems = Vec::new();
    for item in array(&v, "multiset")? {
        match &item {
            Value::Object(map) => {
                let re = map
                    .get("re")
                    .map(rat_from_value)
                    .transpose()?
                    .unwrap_or_else(Rat::zero);
                let im = map
                    .get("im")
                    .map(rat_from_value)
                    .transpose()?
                    .unwrap_or_else(Rat::zero);
                elems.push(Complex::new(re, im));
            }
            other => elems.push(Complex::new(rat_from_value(other)?, Rat::zero())),
        }
    }
    Ok(Multiset::from_complex(elems))
}

pub fn mat_f64_from_str(s: &str) -> ParseResult<Mat<f64>> {
    let v = parse_json(s, "matrix")?;
    let rows = array(&v, "matrix")?
        .iter()
        .map(|row| array(row, "matrix row")?.iter().map(f64_from_value).collect())
        .collect::<ParseResult<Vec<Vec<f64>>>>()?;
    Mat::from_rows(&rows).map_err(|e| e.to_string())
}

pub fn mat_rat_from_str(s: &str) -> ParseResult<Mat<Rat>> {
    let v = parse_json(s, "matrix")?;
    let rows = array(&v, "matrix")?
        .iter()
        .map(|row| array(row, "matrix row")?.iter().map(rat_from_value).collect())
        .collect::<ParseResult<Vec<Vec<Rat>>>>()?;
    Mat::from_rows(&rows).map_err(|e| e.to_string())
}

pub fn mats_f64_from_str(s: &str) -> ParseResult<Vec<Mat<f64>>> {
    let v = parse_json(s, "matrix list")?;
    array(&v, "matrix list")?
        .iter()
        .map(|m| mat_f64_from_str(&m.to_string()))
        .collect()
}

pub fn mats_rat_from_str(s: &str) -> ParseResult<Vec<Mat<Rat>>> {
    let v = parse_json(s, "matrix list")?;
    array(&v, "matrix list")?
        .iter()
        .map(|m| mat_rat_from_str(&m.to_string()))
        .collect()
}

pub fn vectors_from_str(s: &str) -> ParseResult<Vec<Vec<f64>>> {
    let v = parse_json(s, "vector list")?;
    array(&v, "vector list")?
        .iter()
        .map(|row| array(row, "vector")?.iter().map(f64_from_value).collect())
        .collect()
}

// serialization ------------------------------------------------------------

pub fn rat_to_value(r: &Rat) -> Value {
    if r.is_integer() {
        if let Some(i) = r.numer().to_i64() {
            return json!(i);
        }
    }
    json!(format!("{}/{}", r.numer(), r.denom()))
}

pub fn poly_rat_to_value(p: &Poly<Rat>) -> Value {
    json!({
        "mode": "rational",
        "coeffs": p.leading_coeffs().iter().map(rat_to_value).collect::<Vec<Value>>(),
    })
}

pub fn poly_f64_to_value(p: &Poly<f64>) -> Value {
    json!({
        "mode": "float",
        "coeffs": p.leading_coeffs(),
    })
}

pub fn series_rat_to_value(s: &TruncatedSeries<Rat>) -> Value {
    json!({
        "order": s.order(),
        "coeffs": s.coeffs().iter().map(rat_to_value).collect::<Vec<Value>>(),
    })
}

pub fn series_f64_to_value(s: &TruncatedSeries<f64>) -> Value {
    json!({ "order": s.order(), "coeffs": s.coeffs() })
}

pub fn complex_to_value(z: &Complex<f64>) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn multiset_to_value(m: &Multiset<f64>) -> Value {
    json!(m.elems().iter().map(complex_to_value).collect::<Vec<Value>>())
}

pub fn mat_f64_to_value(m: &Mat<f64>) -> Value {
    json!(m.rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_string_forms() {
        assert_eq!(rat_from_str("3/4").unwrap(), Rat::from_ratio(3, 4));
        assert_eq!(rat_from_str("-7").unwrap(), Rat::from_ratio(-7, 1));
        assert_eq!(rat_from_str("0.5").unwrap(), Rat::from_ratio(1, 2));
        assert_eq!(rat_from_str("-3.25").unwrap(), Rat::from_ratio(-13, 4));
        assert!(rat_from_str("1/0").is_err());
    }

    #[test]
    fn poly_round_trip() {
        let p = poly_rat_from_str("[1, -6, \"121/3\", -6]").unwrap();
        assert_eq!(p.degree(), 3);
        let v = poly_rat_to_value(&p);
        assert_eq!(v["coeffs"][2], json!("121/3"));
        assert_eq!(v["coeffs"][0], json!(1));
    }

    #[test]
    fn multiset_complex_entries() {
        let m = multiset_f64_from_str("[1, {\"re\": 0, \"im\": -1.5}]").unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.elems()[1].im, -1.5);
    }
}
