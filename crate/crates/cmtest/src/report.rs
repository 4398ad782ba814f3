//! Evaluation reports: aggregated fields as CSV, the five rendered panels as
//! PNG, and `summary.json` with statistics, degenerate flags and provenance.

use std::path::Path;

use cmtest_core::evaluation::{FieldKind, Statistics};
use cmtest_core::raster::render_evaluation;
use cmtest_core::{Aggregation, DifferenceMetric, EvaluationBundle, Normalization, ScalarField};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::formats::{colormap::serialize_spec, field::to_csv, image::encode_png, testspec};
use crate::fsutil;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash of a field's shape, domain and exact `f64` values.
pub fn field_hash(field: &ScalarField) -> String {
    let d = field.domain();
    let mut h = Sha256::new();
    h.update((field.width() as u64).to_le_bytes());
    h.update((field.height() as u64).to_le_bytes());
    for v in [d.x.0, d.x.1, d.y.0, d.y.1].iter().chain(field.values()) {
        h.update(v.to_le_bytes());
    }
    hex::encode(h.finalize())
}

pub fn normalization_label(n: Normalization) -> String {
    match n {
        Normalization::Custom(max) => format!("custom:{max}"),
        other => other.name().to_owned(),
    }
}

/// Parses `minmax`, `blackwhite` or `custom:<max>`.
pub fn parse_normalization(text: &str) -> Result<Normalization> {
    let lower = text.trim().to_ascii_lowercase();
    match lower.as_str() {
        "minmax" | "min_max" => Ok(Normalization::MinMax),
        "blackwhite" | "black_white" => Ok(Normalization::BlackWhite),
        _ => {
            let max = lower
                .strip_prefix("custom:")
                .and_then(|x| x.parse::<f64>().ok())
                .ok_or_else(|| Error::Usage(format!("normalization `{text}`: expected minmax, blackwhite or custom:<max>")))?;
            if !(max.is_finite() && max > 0.0) {
                return Err(cmtest_core::Error::InvalidCustomMax(max).into());
            }
            Ok(Normalization::Custom(max))
        }
    }
}

pub fn parse_metric(text: &str) -> Result<DifferenceMetric> {
    DifferenceMetric::from_name(&text.to_ascii_lowercase())
        .ok_or_else(|| Error::Usage(format!("metric `{text}`: expected lab, din99, de94 or ciede2000")))
}

pub fn parse_aggregation(text: &str) -> Result<Aggregation> {
    Aggregation::from_name(&text.to_ascii_lowercase())
        .ok_or_else(|| Error::Usage(format!("aggregation `{text}`: expected max, avg or median")))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatisticsDoc {
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub median: f64,
    pub stddev: f64,
}

impl From<Statistics> for StatisticsDoc {
    fn from(s: Statistics) -> Self {
        StatisticsDoc { count: s.count, min: s.min, max: s.max, mean: s.mean, median: s.median, stddev: s.stddev }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerField<T> {
    pub value: T,
    pub color: T,
    pub subtraction: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub test_spec: Option<testspec::TestSpecDocument>,
    pub test_spec_sha256: Option<String>,
    pub colormap_sha256: String,
    pub field_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub width: usize,
    pub height: usize,
    pub metric: String,
    pub normalization: String,
    pub aggregation: String,
    pub degenerate: PerField<bool>,
    pub statistics: PerField<StatisticsDoc>,
    pub provenance: Provenance,
    pub warnings: Vec<String>,
}

impl Summary {
    pub fn of(bundle: &EvaluationBundle, source: Option<String>, warnings: Vec<String>) -> Self {
        let s = bundle.statistics;
        Summary {
            width: bundle.field.width(),
            height: bundle.field.height(),
            metric: bundle.metric.name().to_owned(),
            normalization: normalization_label(bundle.normalization),
            aggregation: bundle.aggregation.name().to_owned(),
            degenerate: PerField {
                value: bundle.value.is_degenerate(),
                color: bundle.color.is_degenerate(),
                subtraction: bundle.subtraction.is_degenerate(),
            },
            statistics: PerField { value: s.value.into(), color: s.color.into(), subtraction: s.subtraction.into() },
            provenance: Provenance {
                test_spec: bundle.test_spec.as_ref().map(testspec::TestSpecDocument::from_spec),
                test_spec_sha256: bundle.test_spec.as_ref().map(|t| sha256_hex(&testspec::canonical_json(t))),
                colormap_sha256: sha256_hex(&serialize_spec(&bundle.colormap)),
                field_sha256: field_hash(&bundle.field),
                source,
            },
            warnings,
        }
    }
}

pub const REPORT_FILES: [&str; 9] = [
    "value.csv",
    "color.csv",
    "subtraction.csv",
    "grayscale.png",
    "mapped.png",
    "value.png",
    "color.png",
    "subtraction.png",
    "summary.json",
];

/// Writes the report directory (created if needed); each file is written
/// atomically.
pub fn write_report(dir: &Path, bundle: &EvaluationBundle, summary: &Summary) -> Result<()> {
    fsutil::create_dir_all(dir)?;
    for kind in [FieldKind::Value, FieldKind::Color, FieldKind::Subtraction] {
        let field = bundle.aggregated(kind, bundle.aggregation);
        fsutil::write_atomic(&dir.join(format!("{}.csv", kind.name())), to_csv(&field).as_bytes())?;
    }
    for (name, img) in render_evaluation(bundle, bundle.aggregation) {
        fsutil::write_atomic(&dir.join(format!("{name}.png")), &encode_png(&img)?)?;
    }
    let mut json = serde_json::to_vec_pretty(summary).map_err(|e| Error::format("summary.json", e.to_string()))?;
    json.push(b'\n');
    fsutil::write_atomic(&dir.join("summary.json"), &json)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn option_parsing() {
        assert_eq!(parse_normalization("minmax").unwrap(), Normalization::MinMax);
        assert_eq!(parse_normalization("BlackWhite").unwrap(), Normalization::BlackWhite);
        assert_eq!(parse_normalization("custom:12.5").unwrap(), Normalization::Custom(12.5));
        assert_eq!(parse_normalization("custom:0").unwrap_err().exit_code(), 4);
        assert_eq!(parse_normalization("zscore").unwrap_err().exit_code(), 2);
        assert_eq!(normalization_label(Normalization::Custom(12.5)), "custom:12.5");
        assert_eq!(parse_metric("CIEDE2000").unwrap(), DifferenceMetric::Ciede2000);
        assert!(parse_metric("cie76").is_err());
        assert_eq!(parse_aggregation("avg").unwrap(), Aggregation::Average);
    }

    #[test]
    fn hashes_are_stable() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
        let f = ScalarField::new(1, 1, vec![1.0], cmtest_core::Domain::new(0.0, 1.0, 0.0, 1.0)).unwrap();
        assert_eq!(field_hash(&f), field_hash(&f.clone()));
    }
}
