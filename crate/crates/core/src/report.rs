//! Key-value report documents.
//!
//! Text form: a `schema=1` line, then one `key=value` line per entry in
//! insertion order. The JSON form is one object with the same keys.

use std::fmt;

use num_bigint::BigUint;
use serde_json::{Map, Number, Value as Json};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Bool(bool),
    Int(u64),
    /// Emitted as a JSON string when it does not fit in a `u64`.
    Big(BigUint),
    Text(String),
    None,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(x) => write!(f, "{x}"),
            Value::Big(x) => write!(f, "{x}"),
            Value::Text(s) => f.write_str(s),
            Value::None => f.write_str("none"),
        }
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as u64)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::Int(u64::from(x))
    }
}

impl From<BigUint> for Value {
    fn from(x: BigUint) -> Self {
        Value::Big(x)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_owned())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(x: Option<T>) -> Self {
        x.map_or(Value::None, Into::into)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends an entry, replacing an earlier one with the same key in place.
    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        let value = value.into();
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((key.to_owned(), value)),
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.entries
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("schema={SCHEMA}\n");
        for (k, v) in &self.entries {
            out.push_str(&format!("{k}={v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        map.insert("schema".into(), Json::from(SCHEMA));
        for (k, v) in &self.entries {
            let json = match v {
                Value::Bool(b) => Json::Bool(*b),
                Value::Int(x) => Json::Number(Number::from(*x)),
                Value::Big(x) => match u64::try_from(x) {
                    Ok(small) => Json::Number(Number::from(small)),
                    Err(_) => Json::String(x.to_string()),
                },
                Value::Text(s) => Json::String(s.clone()),
                Value::None => Json::Null,
            };
            map.insert(k.clone(), json);
        }
        let mut out = serde_json::to_string_pretty(&Json::Object(map)).expect("report serializes");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json() {
        let mut r = Report::new();
        r.set("command", "counting")
            .set("omega_elements", BigUint::from(3u32))
            .set("contradiction", false)
            .set("lhs_valuation", None::<u32>)
            .set("huge", BigUint::from(2u32).pow(70));
        assert_eq!(
            r.to_text(),
            "schema=1\ncommand=counting\nomega_elements=3\ncontradiction=false\nlhs_valuation=none\nhuge=1180591620717411303424\n"
        );
        let json: Json = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["omega_elements"], 3);
        assert_eq!(json["lhs_valuation"], Json::Null);
        assert_eq!(json["huge"], "1180591620717411303424");
    }

    #[test]
    fn set_replaces_in_place() {
        let mut r = Report::new();
        r.set("a", 1u64).set("b", 2u64).set("a", 3u64);
        assert_eq!(r.to_text(), "schema=1\na=3\nb=2\n");
    }
}
