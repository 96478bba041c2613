//! Output records and the complex-number string format.
//!
//! Results are emitted as JSON objects with a versioned `schema` field;
//! field order is fixed by the struct definitions, so identical inputs
//! produce byte-identical output apart from the trailing `wall_time_ms`.
//! CSV output carries a header row and quotes fields per RFC 4180.

use merotrans::C64;
use serde::Serialize;
use std::collections::BTreeMap;

pub const RESULT_SCHEMA: &str = "merotrans.result/1";
pub const ERROR_SCHEMA: &str = "merotrans.error/1";

#[derive(Serialize)]
pub struct ComplexVal {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexVal {
    fn from(z: C64) -> Self {
        ComplexVal { re: z.re, im: z.im }
    }
}

/// One emitted result. Optional sections stay `null` when a subcommand does
/// not produce them.
#[derive(Serialize)]
pub struct ResultRecord {
    pub schema: &'static str,
    pub subcommand: &'static str,
    pub inputs: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ComplexVal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<serde_json::Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<serde_json::Value>>,
    pub wall_time_ms: f64,
}

impl ResultRecord {
    pub fn new(subcommand: &'static str) -> Self {
        ResultRecord {
            schema: RESULT_SCHEMA,
            subcommand,
            inputs: BTreeMap::new(),
            value: None,
            error_estimate: None,
            rows: None,
            certificates: None,
            wall_time_ms: 0.0,
        }
    }

    pub fn input_str(&mut self, key: &str, v: &str) {
        self.inputs.insert(key.into(), serde_json::Value::String(v.into()));
    }

    pub fn input_f64(&mut self, key: &str, v: f64) {
        self.inputs.insert(key.into(), serde_json::json!(v));
    }

    pub fn input_complex(&mut self, key: &str, v: C64) {
        self.inputs.insert(key.into(), serde_json::json!({"re": v.re, "im": v.im}));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serialization")
    }
}

#[derive(Serialize)]
pub struct ErrorRecord<'a> {
    pub schema: &'static str,
    pub kind: &'a str,
    pub message: String,
}

/// Parses `re`, `imi`, `re+imi`, `re-imi` with scientific notation allowed
/// in each part, e.g. `1`, `-0.5`, `2i`, `1+2i`, `3e-2-1.5e-1i`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    // locate a '+'/'-' separator that is not leading and not an exponent sign
    let bytes = s.as_bytes();
    let mut split: Option<usize> = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }
    let parse_part = |p: &str| -> Result<f64, String> {
        let p = if p == "+" || p.is_empty() {
            "1"
        } else if p == "-" {
            "-1"
        } else {
            p
        };
        p.parse::<f64>().map_err(|e| format!("bad number '{p}': {e}"))
    };
    match (split, s.ends_with('i')) {
        (Some(i), true) => {
            let re = parse_part(&s[..i])?;
            let im = parse_part(&s[i..s.len() - 1])?;
            Ok(C64::new(re, im))
        }
        (None, true) => Ok(C64::new(0.0, parse_part(&s[..s.len() - 1])?)),
        (_, false) => Ok(C64::new(parse_part(s)?, 0.0)),
    }
}

/// Canonical form that `parse_complex` round-trips.
pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// RFC-style CSV quoting: quotes fields containing separators or quotes.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip() {
        for s in ["1", "-0.5", "2i", "-2i", "1+2i", "1-2i", "3e-2-1.5e-1i", "0.3"] {
            let z = parse_complex(s).unwrap();
            let back = parse_complex(&format_complex(z)).unwrap();
            assert_eq!(z, back, "input {s}");
        }
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+2j").is_err());
        assert_eq!(parse_complex("1+i").unwrap(), C64::new(1.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
