//! JSON form of a [`TestSpec`]:
//!
//! ```json
//! { "function": "threshold", "width": 800, "height": 800, "seed": 0,
//!   "params": { "m": -63, "M": 53, "t": 0, "T": "flat", "b": 2 } }
//! ```
//!
//! Parameter values may be numbers, booleans, strings (parsed with the
//! parameter's schema, as on the command line) or number arrays.

use std::collections::BTreeMap;

use cmtest_core::{FunctionId, ParamValue, TestSpec};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestSpecDocument {
    pub function: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    pub width: usize,
    pub height: usize,
    #[serde(default)]
    pub seed: u64,
}

fn value_to_param(name: &str, v: &Value) -> Result<ParamValue> {
    Ok(match v {
        Value::Number(n) => ParamValue::Real(n.as_f64().ok_or_else(|| Error::TestSpec(format!("{name}: bad number")))?),
        Value::Bool(b) => ParamValue::Bool(*b),
        Value::String(s) => ParamValue::Text(s.clone()),
        Value::Array(items) => ParamValue::List(
            items
                .iter()
                .map(|x| x.as_f64().ok_or_else(|| Error::TestSpec(format!("{name}: list entries must be numbers"))))
                .collect::<Result<_>>()?,
        ),
        _ => return Err(Error::TestSpec(format!("{name}: unsupported value {v}"))),
    })
}

fn param_to_value(p: &ParamValue) -> Value {
    match p {
        ParamValue::Real(v) => serde_json::json!(v),
        ParamValue::Integer(v) => serde_json::json!(v),
        ParamValue::Bool(b) => Value::Bool(*b),
        ParamValue::Text(t) => Value::String(t.clone()),
        ParamValue::List(vs) => serde_json::json!(vs),
    }
}

impl TestSpecDocument {
    /// Builds and validates the spec.
    pub fn to_spec(&self) -> Result<TestSpec> {
        let function = FunctionId::from_name(&self.function)?;
        let mut spec = TestSpec::new(function, self.width, self.height).with_seed(self.seed);
        for (name, v) in &self.params {
            spec.set_param(name, value_to_param(name, v)?)?;
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_spec(spec: &TestSpec) -> Self {
        TestSpecDocument {
            function: spec.function.name().to_owned(),
            params: spec.params.iter().map(|(k, v)| (k.clone(), param_to_value(v))).collect(),
            width: spec.width,
            height: spec.height,
            seed: spec.seed,
        }
    }
}

/// Canonical JSON bytes (sorted keys, compact) used for hashing.
pub fn canonical_json(spec: &TestSpec) -> Vec<u8> {
    serde_json::to_vec(&TestSpecDocument::from_spec(spec)).expect("serializable")
}

pub fn parse_test_spec(text: &[u8]) -> Result<TestSpec> {
    let doc: TestSpecDocument = serde_json::from_slice(text).map_err(|e| Error::TestSpec(e.to_string()))?;
    doc.to_spec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let spec = parse_test_spec(
            br#"{"function":"threshold","width":80,"height":60,"seed":3,
                 "params":{"m":-63,"M":53,"t":0,"T":"flat","b":2,"noise":"range_scaled","noise_clip":true}}"#,
        )
        .unwrap();
        assert_eq!(spec.params["b"], ParamValue::Integer(2));
        let again = parse_test_spec(&canonical_json(&spec)).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn lists_and_strings() {
        let a = parse_test_spec(br#"{"function":"step","width":8,"height":4,"params":{"A":[0,1,2]}}"#).unwrap();
        let b = parse_test_spec(br#"{"function":"step","width":8,"height":4,"params":{"A":"0,1,2"}}"#).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_documents() {
        let err = parse_test_spec(br#"{"function":"nope","width":8,"height":4}"#).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(parse_test_spec(br#"{"function":"step","width":8,"height":4,"params":{"q":1}}"#).is_err());
        assert!(parse_test_spec(br#"{"function":"step","width":0,"height":4}"#).is_err());
        assert!(parse_test_spec(br#"{"function":"step","width":8,"height":4,"extra":1}"#).is_err());
    }
}
