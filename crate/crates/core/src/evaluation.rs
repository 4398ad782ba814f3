//! Local uniformity analysis of a color mapping.
//!
//! For every pixel the differences to its 3 (corner), 5 (edge) or 8
//! (interior) grid neighbors are measured twice: once on the scalar values
//! and once, with a perceptual metric, on the mapped colors. Both are
//! normalized to `[0, 1]`; their per-pair difference (value − color) is the
//! subtraction field, which is zero wherever equal data steps map to equal
//! color steps. Positive entries mean the colormap under-represents a data
//! gradient, negative entries mean it exaggerates one.
//!
//! Each unordered neighbor pair is measured exactly once, with the
//! lower-index pixel as the reference color, and stored at both ends.

use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::TestSpec;
use crate::color::{Color, DifferenceMetric};
use crate::colormap::ColormapSpec;
use crate::error::{Error, Result};
use crate::field::{Domain, ScalarField};

/// Neighbor offsets `(dx, dy)` in storage order. Slot `k` and slot `7 − k`
/// are opposite directions.
pub const NEIGHBOR_OFFSETS: [(i32, i32); 8] =
    [(-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)];

// Slots pointing to higher-index neighbors.
const FORWARD_SLOTS: [usize; 4] = [4, 5, 6, 7];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Value,
    Color,
    Subtraction,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Value => "value",
            FieldKind::Color => "color",
            FieldKind::Subtraction => "subtraction",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Normalization {
    /// Affine map of the field's own smallest/largest difference onto `[0, 1]`.
    MinMax,
    /// Divide by the metric's black-white distance.
    BlackWhite,
    /// Divide by a user-supplied maximum.
    Custom(f64),
}

impl Normalization {
    pub fn name(&self) -> &'static str {
        match self {
            Normalization::MinMax => "minmax",
            Normalization::BlackWhite => "blackwhite",
            Normalization::Custom(_) => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Aggregation {
    Max,
    Average,
    Median,
}

impl Aggregation {
    pub const ALL: [Aggregation; 3] = [Aggregation::Max, Aggregation::Average, Aggregation::Median];

    pub fn name(self) -> &'static str {
        match self {
            Aggregation::Max => "max",
            Aggregation::Average => "avg",
            Aggregation::Median => "median",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "max" | "maximum" => Some(Aggregation::Max),
            "avg" | "average" | "mean" => Some(Aggregation::Average),
            "median" => Some(Aggregation::Median),
            _ => None,
        }
    }
}

/// `normalized = (raw − lo)/(hi − lo)`, optionally clamped to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalizer {
    pub lo: f64,
    pub hi: f64,
    pub clamp: bool,
}

impl Normalizer {
    pub const IDENTITY: Normalizer = Normalizer { lo: 0.0, hi: 1.0, clamp: false };

    #[inline]
    pub fn apply(&self, raw: f64) -> f64 {
        let span = self.hi - self.lo;
        if span <= 0.0 {
            return 0.0;
        }
        let v = (raw - self.lo) / span;
        if self.clamp {
            v.clamp(0.0, 1.0)
        } else {
            v
        }
    }
}

#[inline]
fn neighbor_index(i: usize, j: usize, slot: usize, width: usize, height: usize) -> Option<usize> {
    let (dx, dy) = NEIGHBOR_OFFSETS[slot];
    let ni = i as i64 + dx as i64;
    let nj = j as i64 + dy as i64;
    if ni < 0 || nj < 0 || ni >= width as i64 || nj >= height as i64 {
        None
    } else {
        Some(nj as usize * width + ni as usize)
    }
}

/// Number of grid neighbors of pixel `(i, j)`.
pub fn neighbor_count(i: usize, j: usize, width: usize, height: usize) -> usize {
    (0..8).filter(|&s| neighbor_index(i, j, s, width, height).is_some()).count()
}

/// Per-pixel neighbor differences plus their normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborDifferenceField {
    width: usize,
    height: usize,
    domain: Domain,
    kind: FieldKind,
    normalization: Option<Normalization>,
    metric: Option<DifferenceMetric>,
    normalizer: Normalizer,
    degenerate: bool,
    // 8 slots per pixel; slots without a neighbor hold 0 and are never read
    raw: Vec<f64>,
}

/// One neighbor entry of a pixel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry {
    pub offset: (i32, i32),
    pub neighbor: (usize, usize),
    pub raw: f64,
    pub normalized: f64,
}

impl NeighborDifferenceField {
    fn pairwise(
        width: usize,
        height: usize,
        domain: Domain,
        kind: FieldKind,
        mut diff: impl FnMut(usize, usize) -> f64,
    ) -> Self {
        let mut raw = vec![0.0; width * height * 8];
        for j in 0..height {
            for i in 0..width {
                let p = j * width + i;
                for slot in FORWARD_SLOTS {
                    if let Some(q) = neighbor_index(i, j, slot, width, height) {
                        let d = diff(p, q);
                        raw[p * 8 + slot] = d;
                        raw[q * 8 + 7 - slot] = d;
                    }
                }
            }
        }
        NeighborDifferenceField {
            width,
            height,
            domain,
            kind,
            normalization: None,
            metric: None,
            normalizer: Normalizer::IDENTITY,
            degenerate: false,
            raw,
        }
    }

    fn raw_min_max(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (_, _, _, v) in self.raw_entries() {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    }

    fn normalize_min_max(&mut self) {
        let (lo, hi) = self.raw_min_max();
        self.normalization = Some(Normalization::MinMax);
        self.normalizer = if hi > lo {
            Normalizer { lo, hi, clamp: false }
        } else if hi > 0.0 {
            // all differences equal: scale by the common value
            Normalizer { lo: 0.0, hi, clamp: false }
        } else {
            self.degenerate = true;
            Normalizer { lo: 0.0, hi: 0.0, clamp: false }
        };
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn normalization(&self) -> Option<Normalization> {
        self.normalization
    }

    pub fn metric(&self) -> Option<DifferenceMetric> {
        self.metric
    }

    pub fn normalizer(&self) -> Normalizer {
        self.normalizer
    }

    /// Set when normalization had nothing to scale (all differences zero).
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn neighbor_count(&self, i: usize, j: usize) -> usize {
        neighbor_count(i, j, self.width, self.height)
    }

    /// Entries of pixel `(i, j)` in slot order.
    pub fn entries(&self, i: usize, j: usize) -> impl Iterator<Item = Entry> + '_ {
        let p = j * self.width + i;
        (0..8).filter_map(move |slot| {
            let q = neighbor_index(i, j, slot, self.width, self.height)?;
            let raw = self.raw[p * 8 + slot];
            Some(Entry {
                offset: NEIGHBOR_OFFSETS[slot],
                neighbor: (q % self.width, q / self.width),
                raw,
                normalized: self.normalizer.apply(raw),
            })
        })
    }

    /// Raw entry from pixel `(i, j)` toward the neighbor at `slot`.
    pub fn raw_at(&self, i: usize, j: usize, slot: usize) -> Option<f64> {
        neighbor_index(i, j, slot, self.width, self.height).map(|_| self.raw[(j * self.width + i) * 8 + slot])
    }

    pub fn normalized_at(&self, i: usize, j: usize, slot: usize) -> Option<f64> {
        self.raw_at(i, j, slot).map(|r| self.normalizer.apply(r))
    }

    /// All `(i, j, slot, raw)` tuples in pixel-then-slot order.
    fn raw_entries(&self) -> impl Iterator<Item = (usize, usize, usize, f64)> + '_ {
        let (w, h) = (self.width, self.height);
        (0..h).flat_map(move |j| {
            (0..w).flat_map(move |i| {
                (0..8).filter_map(move |slot| {
                    neighbor_index(i, j, slot, w, h).map(|_| (i, j, slot, self.raw[(j * w + i) * 8 + slot]))
                })
            })
        })
    }

    /// All normalized entries in pixel-then-slot order.
    pub fn normalized_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.raw_entries().map(|(_, _, _, r)| self.normalizer.apply(r))
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::DimensionMismatch(self.width, self.height, other.width, other.height));
        }
        Ok(())
    }
}

fn check_finite(field: &ScalarField) -> Result<()> {
    match field.values().iter().position(|v| !v.is_finite()) {
        Some(idx) => Err(Error::NonFiniteValue(idx)),
        None => Ok(()),
    }
}

/// Absolute value differences, min-max normalized.
pub fn value_difference_field(field: &ScalarField) -> Result<NeighborDifferenceField> {
    check_finite(field)?;
    let v = field.values();
    let mut f = NeighborDifferenceField::pairwise(field.width(), field.height(), field.domain(), FieldKind::Value, |p, q| {
        libm::fabs(v[p] - v[q])
    });
    f.normalize_min_max();
    Ok(f)
}

/// Perceptual differences between the colors `cmap` assigns to neighboring pixels.
pub fn color_difference_field(
    field: &ScalarField,
    cmap: &ColormapSpec,
    metric: DifferenceMetric,
    normalization: Normalization,
) -> Result<NeighborDifferenceField> {
    check_finite(field)?;
    if let Normalization::Custom(max) = normalization {
        if !(max > 0.0 && max.is_finite()) {
            return Err(Error::InvalidCustomMax(max));
        }
    }
    let space = metric.operand_space();
    let colors: Vec<[f64; 3]> = field.values().iter().map(|&v| cmap.sample(v).to(space).components()).collect();
    let mut f = NeighborDifferenceField::pairwise(field.width(), field.height(), field.domain(), FieldKind::Color, |p, q| {
        metric.delta_e_components(colors[p], colors[q])
    });
    f.metric = Some(metric);
    match normalization {
        Normalization::MinMax => f.normalize_min_max(),
        Normalization::BlackWhite => {
            let max = metric.delta_e(&Color::black(), &Color::white())?;
            f.normalization = Some(normalization);
            f.normalizer = Normalizer { lo: 0.0, hi: max, clamp: true };
        }
        Normalization::Custom(max) => {
            f.normalization = Some(normalization);
            f.normalizer = Normalizer { lo: 0.0, hi: max, clamp: true };
        }
    }
    if f.normalization != Some(Normalization::MinMax) {
        let (_, hi) = f.raw_min_max();
        f.degenerate = hi <= 0.0;
    }
    Ok(f)
}

/// Per entry: normalized value difference minus normalized color difference.
pub fn subtraction_field(
    value: &NeighborDifferenceField,
    color: &NeighborDifferenceField,
) -> Result<NeighborDifferenceField> {
    value.check_same_shape(color)?;
    let mut raw = vec![0.0; value.raw.len()];
    for (k, out) in raw.iter_mut().enumerate() {
        *out = value.normalizer.apply(value.raw[k]) - color.normalizer.apply(color.raw[k]);
    }
    Ok(NeighborDifferenceField {
        width: value.width,
        height: value.height,
        domain: value.domain,
        kind: FieldKind::Subtraction,
        normalization: None,
        metric: color.metric,
        normalizer: Normalizer::IDENTITY,
        degenerate: false,
        raw,
    })
}

/// Median with the even-count convention of averaging the two middle values.
/// Sorts `values` in place.
pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Reduces one pixel's normalized entries. `signed_max` picks the entry of
/// largest magnitude and keeps its sign (first one wins on ties).
pub fn reduce(entries: &mut [f64], how: Aggregation, signed_max: bool) -> f64 {
    if entries.is_empty() {
        return 0.0;
    }
    match how {
        Aggregation::Max if signed_max => {
            let mut best = entries[0];
            for &e in &entries[1..] {
                if libm::fabs(e) > libm::fabs(best) {
                    best = e;
                }
            }
            best
        }
        Aggregation::Max => entries.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        Aggregation::Average => entries.iter().sum::<f64>() / entries.len() as f64,
        Aggregation::Median => median(entries),
    }
}

/// Per-pixel reduction of the normalized entries to a scalar field.
pub fn aggregate(f: &NeighborDifferenceField, how: Aggregation) -> ScalarField {
    let signed = f.kind == FieldKind::Subtraction;
    let mut values = Vec::with_capacity(f.width * f.height);
    let mut buf = [0.0f64; 8];
    for j in 0..f.height {
        for i in 0..f.width {
            let mut n = 0;
            for e in f.entries(i, j) {
                buf[n] = e.normalized;
                n += 1;
            }
            values.push(reduce(&mut buf[..n], how, signed));
        }
    }
    ScalarField::new(f.width, f.height, values, f.domain).expect("shape preserved")
}

/// Summary over all normalized entries (population standard deviation).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Statistics {
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub median: f64,
    pub stddev: f64,
}

pub fn statistics_of(values: &mut [f64]) -> Statistics {
    let count = values.len();
    if count == 0 {
        return Statistics::default();
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for &v in values.iter() {
        min = min.min(v);
        max = max.max(v);
        sum += v;
    }
    let mean = sum / count as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / count as f64;
    let median = {
        let k = count / 2;
        let (left, upper, _) = values.select_nth_unstable_by(k, f64::total_cmp);
        let upper = *upper;
        if count % 2 == 1 {
            upper
        } else {
            let lower = left.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (lower + upper) / 2.0
        }
    };
    Statistics { count, min, max, mean, median, stddev: libm::sqrt(var) }
}

pub fn field_statistics(f: &NeighborDifferenceField) -> Statistics {
    let mut values: Vec<f64> = f.normalized_values().collect();
    statistics_of(&mut values)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BundleStatistics {
    pub value: Statistics,
    pub color: Statistics,
    pub subtraction: Statistics,
}

/// The three difference fields of one (field, colormap, metric) evaluation.
#[derive(Debug, Clone)]
pub struct EvaluationBundle {
    pub field: ScalarField,
    pub colormap: ColormapSpec,
    pub metric: DifferenceMetric,
    pub normalization: Normalization,
    pub aggregation: Aggregation,
    pub test_spec: Option<TestSpec>,
    pub value: NeighborDifferenceField,
    pub color: NeighborDifferenceField,
    pub subtraction: NeighborDifferenceField,
    pub statistics: BundleStatistics,
}

impl EvaluationBundle {
    pub fn evaluate(
        field: ScalarField,
        colormap: ColormapSpec,
        metric: DifferenceMetric,
        normalization: Normalization,
        aggregation: Aggregation,
    ) -> Result<Self> {
        let value = value_difference_field(&field)?;
        let color = color_difference_field(&field, &colormap, metric, normalization)?;
        let subtraction = subtraction_field(&value, &color)?;
        let statistics = BundleStatistics {
            value: field_statistics(&value),
            color: field_statistics(&color),
            subtraction: field_statistics(&subtraction),
        };
        Ok(EvaluationBundle {
            field,
            colormap,
            metric,
            normalization,
            aggregation,
            test_spec: None,
            value,
            color,
            subtraction,
            statistics,
        })
    }

    pub fn with_test_spec(mut self, spec: TestSpec) -> Self {
        self.test_spec = Some(spec);
        self
    }

    pub fn is_degenerate(&self) -> bool {
        self.value.is_degenerate() || self.color.is_degenerate()
    }

    pub fn field_of(&self, kind: FieldKind) -> &NeighborDifferenceField {
        match kind {
            FieldKind::Value => &self.value,
            FieldKind::Color => &self.color,
            FieldKind::Subtraction => &self.subtraction,
        }
    }

    pub fn aggregated(&self, kind: FieldKind, how: Aggregation) -> ScalarField {
        aggregate(self.field_of(kind), how)
    }

    pub fn pixel_observer(&self, i: usize, j: usize) -> Result<PixelReport> {
        pixel_observer(self, i, j)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeighborRow {
    pub offset: (i32, i32),
    pub neighbor: (usize, usize),
    pub neighbor_value: f64,
    pub value_raw: f64,
    pub value_normalized: f64,
    pub color_raw: f64,
    pub color_normalized: f64,
    pub subtraction: f64,
}

/// Neighborhood of one pixel across all three fields.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelReport {
    pub i: usize,
    pub j: usize,
    pub value: f64,
    pub rows: Vec<NeighborRow>,
}

pub fn pixel_observer(bundle: &EvaluationBundle, i: usize, j: usize) -> Result<PixelReport> {
    let (width, height) = (bundle.field.width(), bundle.field.height());
    if i >= width || j >= height {
        return Err(Error::OutOfBounds { i, j, width, height });
    }
    let rows = bundle
        .value
        .entries(i, j)
        .zip(bundle.color.entries(i, j))
        .zip(bundle.subtraction.entries(i, j))
        .map(|((v, c), s)| NeighborRow {
            offset: v.offset,
            neighbor: v.neighbor,
            neighbor_value: bundle.field.get(v.neighbor.0, v.neighbor.1),
            value_raw: v.raw,
            value_normalized: v.normalized,
            color_raw: c.raw,
            color_normalized: c.normalized,
            subtraction: s.normalized,
        })
        .collect();
    Ok(PixelReport { i, j, value: bundle.field.get(i, j), rows })
}
