//! Text output: 17-significant-digit numbers and TSV matrix dumps.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serializer};

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros
/// trimmed, exponent form outside `1e-4 ≤ |x| < 1e17`.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Row-major TSV, one row per line.
pub fn matrix_tsv(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(|&v| g17(v)).collect();
        let _ = writeln!(out, "{}", cells.join("\t"));
    }
    out
}

/// JSON rendering of a matrix as nested arrays of `g17` numbers.
pub fn matrix_json(m: &DMatrix<f64>) -> String {
    let rows: Vec<String> = m
        .row_iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|&v| json_number(v)).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// A JSON number literal, or `null` for non-finite values.
pub fn json_number(x: f64) -> String {
    if x.is_finite() {
        g17(x)
    } else {
        "null".into()
    }
}

pub(crate) fn serialize_g17<S: Serializer>(x: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    use serde::ser::Error as _;
    use serde::Serialize as _;
    let raw = serde_json::value::RawValue::from_string(json_number(*x)).map_err(S::Error::custom)?;
    raw.serialize(serializer)
}

pub(crate) fn deserialize_g17<'de, D: Deserializer<'de>>(deserializer: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(deserializer)?.unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;
    use proptest::prelude::*;

    #[test]
    fn matches_printf_g17() {
        assert_eq!(g17(2.0), "2");
        assert_eq!(g17(-0.5), "-0.5");
        assert_eq!(g17(0.1), "0.10000000000000001");
        assert_eq!(g17(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(g17(1e-5), "1.0000000000000001e-05");
        assert_eq!(g17(1e20), "1e+20");
        assert_eq!(g17(123456.0), "123456");
        assert_eq!(g17(0.0), "0");
        assert_eq!(g17(f64::NAN), "nan");
    }

    #[test]
    fn tsv_layout() {
        let m = dmatrix![0.5, -0.5; -0.5, 0.5];
        assert_eq!(matrix_tsv(&m), "0.5\t-0.5\n-0.5\t0.5\n");
        assert_eq!(matrix_json(&m), "[[0.5,-0.5],[-0.5,0.5]]");
    }

    proptest! {
        #[test]
        fn g17_round_trips(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL) {
            let s = g17(x);
            prop_assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }
}
