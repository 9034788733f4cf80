//! Fixed-precision number formatting shared by every report writer.

use serde::Serialize;
use serde_json::Value;

/// Significant digits kept in emitted numbers.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits; non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Shortest form of `round_sig(x)`; scientific notation outside `[1e-5, 1e15)`.
pub fn fmt_num(x: f64) -> String {
    let r = round_sig(x);
    let a = r.abs();
    if r == 0.0 || !r.is_finite() || (1e-5..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Rounds every number inside a JSON value in place.
pub fn round_json(value: &mut Value) {
    match value {
        Value::Number(num) => {
            if num.is_f64() {
                if let Some(x) = num.as_f64() {
                    if let Some(r) = serde_json::Number::from_f64(round_sig(x)) {
                        *num = r;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Pretty JSON of `value` with rounded numbers and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_json(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(4.0 / 3.0), 1.33333333333);
        assert_eq!(round_sig(4.0), 4.0);
        assert_eq!(round_sig(0.0), 0.0);
        assert!(round_sig(f64::NAN).is_nan());
        assert_eq!(fmt_num(1.0 / 6.0), "0.166666666667");
        assert_eq!(fmt_num(2.5e-20), "2.5e-20");
    }

    #[test]
    fn json_rounding() {
        let s = to_json(&serde_json::json!({"low": 4.0 / 3.0, "high": 4.0, "n": 2})).unwrap();
        assert!(s.contains("1.33333333333"));
        assert!(s.contains("\"high\": 4.0"));
        assert!(s.contains("\"n\": 2"));
    }
}
