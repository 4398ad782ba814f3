//! Colormap spec documents (UTF-8 JSON).
//!
//! ```json
//! {
//!   "range": [-63, 53],
//!   "interpolation_space": "lab",
//!   "nan_color": [1, 0, 1],
//!   "keys": [
//!     { "position": -63, "left_rgb": [0.23, 0.30, 0.75], "right_rgb": [0.23, 0.30, 0.75] },
//!     { "position": 0,   "left_rgb": [0.70, 0.80, 0.95], "right_rgb": [1, 1, 1] },
//!     { "position": 53,  "left_rgb": [0.71, 0.02, 0.15], "right_rgb": [0.71, 0.02, 0.15] }
//!   ]
//! }
//! ```
//!
//! Colors are sRGB triples in `[0, 1]`. `interpolation_space` is one of
//! `lab`, `din99`, `srgb`; `nan_color` defaults to magenta. A key whose
//! `left_rgb` differs from `right_rgb` is a twin key (a discontinuity).
//! `right_rgb` may be omitted for ordinary keys. Unknown top-level fields are
//! ignored with a warning naming them.

use std::collections::BTreeMap;

use cmtest_core::colormap::InterpolationSpace;
use cmtest_core::{Color, ColorSpace, ColormapKey, ColormapSpec};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyDocument {
    pub position: f64,
    pub left_rgb: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_rgb: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColormapDocument {
    pub range: [f64; 2],
    pub interpolation_space: String,
    #[serde(default = "default_nan")]
    pub nan_color: [f64; 3],
    pub keys: Vec<KeyDocument>,
    #[serde(flatten, skip_serializing)]
    pub unknown: BTreeMap<String, serde_json::Value>,
}

fn default_nan() -> [f64; 3] {
    [1.0, 0.0, 1.0]
}

/// A parsed spec plus any non-fatal warnings.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub spec: ColormapSpec,
    pub warnings: Vec<String>,
}

fn rgb(what: &str, c: [f64; 3]) -> Result<Color> {
    if c.iter().any(|v| !v.is_finite() || !(0.0..=1.0).contains(v)) {
        return Err(Error::Spec(format!("{what}: sRGB components must lie in [0, 1], got {c:?}")));
    }
    Ok(Color::srgb(c[0], c[1], c[2]))
}

impl ColormapDocument {
    pub fn to_spec(&self) -> Result<ColormapSpec> {
        let space = InterpolationSpace::from_name(&self.interpolation_space).ok_or_else(|| {
            Error::Spec(format!(
                "unknown interpolation_space `{}` (expected lab, din99 or srgb)",
                self.interpolation_space
            ))
        })?;
        let keys = self
            .keys
            .iter()
            .enumerate()
            .map(|(k, key)| {
                let left = rgb(&format!("keys[{k}].left_rgb"), key.left_rgb)?;
                let right = match key.right_rgb {
                    Some(c) => rgb(&format!("keys[{k}].right_rgb"), c)?,
                    None => left,
                };
                Ok(ColormapKey::twin(key.position, left, right))
            })
            .collect::<Result<Vec<_>>>()?;
        let nan = rgb("nan_color", self.nan_color)?;
        ColormapSpec::with_range(keys, space, nan, (self.range[0], self.range[1])).map_err(|e| Error::Spec(e.to_string()))
    }

    pub fn from_spec(spec: &ColormapSpec) -> Self {
        let srgb = |c: Color| {
            let v = c.to(ColorSpace::Srgb).components();
            [v[0].clamp(0.0, 1.0), v[1].clamp(0.0, 1.0), v[2].clamp(0.0, 1.0)]
        };
        let (lo, hi) = spec.range();
        ColormapDocument {
            range: [lo, hi],
            interpolation_space: spec.interpolation_space().name().to_owned(),
            nan_color: srgb(spec.nan_color()),
            keys: spec
                .keys()
                .iter()
                .map(|k| {
                    let left = srgb(k.left);
                    let right = srgb(k.right);
                    KeyDocument { position: k.position, left_rgb: left, right_rgb: (left != right).then_some(right) }
                })
                .collect(),
            unknown: BTreeMap::new(),
        }
    }
}

pub fn parse_spec(text: &[u8]) -> Result<Parsed> {
    let doc: ColormapDocument = serde_json::from_slice(text).map_err(|e| Error::Spec(e.to_string()))?;
    let spec = doc.to_spec()?;
    let warnings = if doc.unknown.is_empty() {
        Vec::new()
    } else {
        let names: Vec<&str> = doc.unknown.keys().map(String::as_str).collect();
        vec![format!("ignoring unknown top-level fields: {}", names.join(", "))]
    };
    Ok(Parsed { spec, warnings })
}

pub fn serialize_spec(spec: &ColormapSpec) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&ColormapDocument::from_spec(spec)).expect("serializable document");
    out.push(b'\n');
    out
}

/// Built-in maps usable wherever a spec file is expected.
pub fn builtin(name: &str, range: (f64, f64)) -> Option<ColormapSpec> {
    let (lo, hi) = if range.0 < range.1 { range } else { (range.0 - 1.0, range.0 + 1.0) };
    match name {
        "grayscale" | "gray" => ColormapSpec::grayscale(lo, hi).ok(),
        "cool-warm" | "coolwarm" => ColormapSpec::new(
            vec![
                ColormapKey::new(lo, Color::srgb(0.230, 0.299, 0.754)),
                ColormapKey::new(0.5 * (lo + hi), Color::srgb(0.865, 0.865, 0.865)),
                ColormapKey::new(hi, Color::srgb(0.706, 0.016, 0.150)),
            ],
            InterpolationSpace::Lab,
            Color::srgb(1.0, 0.0, 1.0),
        )
        .ok(),
        _ => None,
    }
}

pub const BUILTIN_NAMES: [&str; 2] = ["grayscale", "cool-warm"];

#[cfg(test)]
mod tests {
    use super::*;

    const TWIN: &str = r#"{
        "range": [-63, 53],
        "interpolation_space": "lab",
        "nan_color": [0, 0, 0],
        "keys": [
            {"position": -63, "left_rgb": [0.23, 0.3, 0.75]},
            {"position": 0, "left_rgb": [0.7, 0.8, 0.95], "right_rgb": [1, 1, 1]},
            {"position": 53, "left_rgb": [0.71, 0.02, 0.15], "right_rgb": [0.71, 0.02, 0.15]}
        ]
    }"#;

    #[test]
    fn parses_twin_keys() {
        let p = parse_spec(TWIN.as_bytes()).unwrap();
        assert!(p.warnings.is_empty());
        assert_eq!(p.spec.range(), (-63.0, 53.0));
        assert!(p.spec.keys()[1].is_twin());
        assert_eq!(p.spec.sample(0.0).to_rgb8(), [255, 255, 255]);
    }

    #[test]
    fn round_trip_is_identity() {
        let spec = parse_spec(TWIN.as_bytes()).unwrap().spec;
        let text = serialize_spec(&spec);
        let again = parse_spec(&text).unwrap().spec;
        assert_eq!(again, spec);
        assert_eq!(serialize_spec(&again), text);
    }

    #[test]
    fn descriptive_errors() {
        let dup = TWIN.replace("\"position\": 0,", "\"position\": -63,");
        let msg = parse_spec(dup.as_bytes()).unwrap_err().to_string();
        assert!(msg.contains("duplicate key position"), "{msg}");
        let unordered = TWIN.replace("\"position\": 0,", "\"position\": 60,");
        assert!(parse_spec(unordered.as_bytes()).is_err());
        let space = TWIN.replace("\"lab\"", "\"hsv\"");
        assert!(parse_spec(space.as_bytes()).unwrap_err().to_string().contains("hsv"));
        let range = TWIN.replace("[-63, 53]", "[-60, 53]");
        assert!(parse_spec(range.as_bytes()).is_err());
        let gamut = TWIN.replace("[0, 0, 0]", "[0, 2, 0]");
        assert!(parse_spec(gamut.as_bytes()).is_err());
    }

    #[test]
    fn unknown_fields_warn() {
        let extra = TWIN.replacen('{', "{\"author\": \"x\", \"zeta\": 1,", 1);
        let p = parse_spec(extra.as_bytes()).unwrap();
        assert_eq!(p.warnings, vec!["ignoring unknown top-level fields: author, zeta".to_string()]);
    }

    #[test]
    fn builtins_cover_range() {
        for name in BUILTIN_NAMES {
            let m = builtin(name, (-2.0, 5.0)).unwrap();
            assert_eq!(m.range(), (-2.0, 5.0));
        }
        assert!(builtin("nope", (0.0, 1.0)).is_none());
    }
}
