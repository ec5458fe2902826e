//! Canonical JSON: sorted keys, floats as `d.dddddddddddddddde±x` (17
//! significant digits), non-finite numbers as `null`.

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_canonical<T: Serialize>(value: &T) -> Result<String, CliError> {
    let v = serde_json::to_value(value).map_err(|e| CliError::Output(e.to_string()))?;
    let mut out = String::new();
    write_value(&v, &mut out);
    Ok(out)
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                match n.as_f64() {
                    Some(x) if x.is_finite() => out.push_str(&format_float(x)),
                    _ => out.push_str("null"),
                }
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_value(&map[k], out);
            }
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_sorted_and_floats_fixed() {
        let s = to_canonical(&json!({"b": 1.5, "a": [2, true, null], "c": "x\"y"})).unwrap();
        assert_eq!(s, r#"{"a":[2,true,null],"b":1.5000000000000000e0,"c":"x\"y"}"#);
    }

    #[test]
    fn seventeen_significant_digits_round_trip() {
        let x = 0.1 + 0.2;
        let s = format_float(x);
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }

    #[test]
    fn non_finite_becomes_null() {
        #[derive(Serialize)]
        struct S {
            x: f64,
        }
        assert_eq!(to_canonical(&S { x: f64::NAN }).unwrap(), r#"{"x":null}"#);
    }
}
