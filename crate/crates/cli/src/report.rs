//! JSON report envelope. Keys come out sorted because `serde_json::Map` is
//! a `BTreeMap` without the `preserve_order` feature.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
const SIGNIFICANT_DIGITS: usize = 12;

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Rounds to 12 significant digits; non-finite values become `null`.
pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap();
    // Avoid "-0.0" in reports.
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    json!(rounded)
}

pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub conventions: Map<String, Value>,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, input: &[u8], result: Value) -> Self {
        Report { command: command.into(), input_digest: digest(input), conventions: Map::new(), result }
    }

    pub fn convention(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.conventions.insert(key.into(), value.into());
        self
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "conventions": Value::Object(self.conventions.clone()),
            "input_sha256": self.input_digest,
            "result": self.result,
            "version": VERSION,
        })
    }

    /// Pretty JSON with LF line endings and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serialises");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_are_rounded() {
        assert_eq!(real(2f64.sqrt()), json!(1.41421356237));
        assert_eq!(real(4.0), json!(4.0));
        assert_eq!(real(-0.0), json!(0.0));
        assert_eq!(real(f64::NAN), Value::Null);
    }

    #[test]
    fn keys_are_sorted() {
        let r = Report::new("x", b"", json!({"b": 1, "a": 2})).convention("z", "1").convention("m", "2");
        let s = r.render();
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(s.find("\"command\"").unwrap() < s.find("\"version\"").unwrap());
        assert!(!s.contains('\r'));
    }
}
