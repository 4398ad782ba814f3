//! Catalog of test functions and their parameter schemas, and [`TestSpec`],
//! the reproducible description of one generated field.
//!
//! Parameters are looked up by name (`r`, `R`, `b`, `T_x`, ...). Every
//! function additionally accepts the `noise*` parameters, which layer noise
//! on top of the clean field.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Domain, ScalarField, Surface};
use crate::noise::{apply_noise, Distribution, NoiseMode, NoiseOptions, NoiseSource};
use crate::testfields::{
    Collection, CollectionFunction, Frequency, Gradient, LittleBit, MinMaxSaddle, RidgeValley, Shape, Step, Threshold,
    ThresholdType,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionId {
    Step,
    Gradient,
    MinMaxSaddle,
    RidgeValley,
    Frequency,
    Threshold,
    LittleBit,
    Collection(CollectionFunction),
}

impl FunctionId {
    pub fn all() -> impl Iterator<Item = FunctionId> {
        [
            FunctionId::Step,
            FunctionId::Gradient,
            FunctionId::MinMaxSaddle,
            FunctionId::RidgeValley,
            FunctionId::Frequency,
            FunctionId::Threshold,
            FunctionId::LittleBit,
        ]
        .into_iter()
        .chain(CollectionFunction::ALL.into_iter().map(FunctionId::Collection))
    }

    pub fn name(self) -> &'static str {
        match self {
            FunctionId::Step => "step",
            FunctionId::Gradient => "gradient",
            FunctionId::MinMaxSaddle => "mms",
            FunctionId::RidgeValley => "ridge_valley",
            FunctionId::Frequency => "frequency",
            FunctionId::Threshold => "threshold",
            FunctionId::LittleBit => "little_bit",
            FunctionId::Collection(c) => c.name(),
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        let alias = match name {
            "min_max_saddle" => "mms",
            "ridge" | "valley" => "ridge_valley",
            "littlebit" => "little_bit",
            other => other,
        };
        Self::all()
            .find(|f| f.name() == alias)
            .ok_or_else(|| Error::UnknownFunction(name.to_owned()))
    }

    pub fn description(self) -> &'static str {
        match self {
            FunctionId::Step => "steps between constant cells of increasing test values A",
            FunctionId::Gradient => "linear, concave or convex gradients from r to R",
            FunctionId::MinMaxSaddle => "o*x^2 + p*y^2 + m: minimum, maximum or saddle at the origin",
            FunctionId::RidgeValley => "ridge (R > r) or valley (R < r) line along x = 0",
            FunctionId::Frequency => "D+1 sine periods of increasing frequency, amplitude fading along y",
            FunctionId::Threshold => "isoline t at x = 0 with linear, flat or steep surroundings",
            FunctionId::LittleBit => "linear ramp with grooves of increasing depth g_m..g_M",
            FunctionId::Collection(CollectionFunction::Mandelbrot) => "Mandelbrot escape-time iteration count",
            FunctionId::Collection(_) => "optimization benchmark function",
        }
    }

    pub fn params(self) -> &'static [ParamSchema] {
        match self {
            FunctionId::Step => STEP_PARAMS,
            FunctionId::Gradient => GRADIENT_PARAMS,
            FunctionId::MinMaxSaddle => MMS_PARAMS,
            FunctionId::RidgeValley => RIDGE_PARAMS,
            FunctionId::Frequency => FREQUENCY_PARAMS,
            FunctionId::Threshold => THRESHOLD_PARAMS,
            FunctionId::LittleBit => LITTLE_BIT_PARAMS,
            FunctionId::Collection(CollectionFunction::Mandelbrot) => MANDELBROT_PARAMS,
            FunctionId::Collection(_) => COLLECTION_PARAMS,
        }
    }

    /// Function-specific parameters followed by the shared noise parameters.
    pub fn schema(self) -> impl Iterator<Item = &'static ParamSchema> {
        self.params().iter().chain(NOISE_PARAMS.iter())
    }

    pub fn find_param(self, name: &str) -> Option<&'static ParamSchema> {
        self.schema().find(|p| p.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Real,
    /// Non-negative integer.
    Integer,
    Bool,
    Choice(&'static [&'static str]),
    /// Comma-separated reals.
    RealList,
}

impl ParamKind {
    pub fn name(&self) -> &'static str {
        match self {
            ParamKind::Real => "real",
            ParamKind::Integer => "integer",
            ParamKind::Bool => "bool",
            ParamKind::Choice(_) => "choice",
            ParamKind::RealList => "real_list",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSchema {
    pub name: &'static str,
    pub kind: ParamKind,
    /// Textual default; `None` means the parameter is optional with no default.
    pub default: Option<&'static str>,
    pub description: &'static str,
}

const fn p(name: &'static str, kind: ParamKind, default: Option<&'static str>, description: &'static str) -> ParamSchema {
    ParamSchema { name, kind, default, description }
}

const SHAPES: &[&str] = &["linear", "concave", "convex"];
const THRESHOLD_TYPES: &[&str] = &["linear", "flat", "steep"];
const NOISE_MODES: &[&str] = &["none", "max_scaled", "min_scaled", "range_scaled", "replacement"];
const DISTRIBUTIONS: &[&str] = &["uniform", "normal", "beta", "beta_left", "beta_right"];
const SOURCES: &[&str] = &["random", "perlin"];

use ParamKind::{Bool, Choice, Integer, Real, RealList};

const STEP_PARAMS: &[ParamSchema] =
    &[p("A", RealList, Some("0,0.25,0.75,1"), "strictly increasing test values (at least 2)")];

const GRADIENT_PARAMS: &[ParamSchema] = &[
    p("r", Real, Some("0"), "value along x = 0 and at y = 0"),
    p("R", Real, Some("1"), "value at (1, 1)"),
    p("b", Integer, Some("1"), "exponent; 1 gives linear gradients"),
    p("T_x", Choice(SHAPES), Some("convex"), "shape along x"),
    p("T_y", Choice(SHAPES), Some("convex"), "shape of g(y)"),
];

const MMS_PARAMS: &[ParamSchema] = &[
    p("o", Real, Some("1"), "x curvature (non-zero)"),
    p("p", Real, Some("1"), "y curvature (non-zero)"),
    p("m", Real, Some("0"), "value at the critical point"),
    p("x0", Real, Some("-1"), "domain"),
    p("x1", Real, Some("1"), "domain"),
    p("y0", Real, Some("-1"), "domain"),
    p("y1", Real, Some("1"), "domain"),
];

const RIDGE_PARAMS: &[ParamSchema] = &[
    p("r", Real, Some("0"), "value at |x| = 1"),
    p("R", Real, Some("1"), "value on the line at y = 1"),
    p("b", Integer, Some("1"), "exponent"),
    p("b_y", Integer, None, "exponent of g(y); defaults to b"),
    p("T_x", Choice(SHAPES), Some("concave"), "concave: |x|^b, convex: 1-(1-|x|)^b"),
    p("T_y", Choice(SHAPES), Some("linear"), "shape of g(y)"),
];

const FREQUENCY_PARAMS: &[ParamSchema] = &[
    p("D", Integer, Some("5"), "number of frequency increases"),
    p("W", Real, Some("1"), "amplitude (> 0)"),
    p("u", Real, Some("0"), "median value"),
];

const THRESHOLD_PARAMS: &[ParamSchema] = &[
    p("m", Real, Some("-1"), "lower value"),
    p("M", Real, Some("1"), "upper value"),
    p("t", Real, Some("0"), "threshold, m < t < M"),
    p("T", Choice(THRESHOLD_TYPES), Some("linear"), "gradient type around the isoline"),
    p("b", Integer, Some("1"), "exponent"),
];

const LITTLE_BIT_PARAMS: &[ParamSchema] = &[
    p("m", Real, Some("0.1"), "background value at y = 0"),
    p("M", Real, Some("1"), "background value at y = 1"),
    p("g_m", Real, Some("0.0001"), "depth of the first groove"),
    p("g_M", Real, Some("0.1"), "depth of the last groove"),
    p("groove_count", Integer, Some("10"), "number of grooves"),
];

const COLLECTION_PARAMS: &[ParamSchema] = &[
    p("rescale_lo", Real, None, "rescale values to [rescale_lo, rescale_hi]"),
    p("rescale_hi", Real, None, "rescale values to [rescale_lo, rescale_hi]"),
    p("x0", Real, None, "domain override"),
    p("x1", Real, None, "domain override"),
    p("y0", Real, None, "domain override"),
    p("y1", Real, None, "domain override"),
];

const MANDELBROT_PARAMS: &[ParamSchema] = &[
    p("rescale_lo", Real, None, "rescale values to [rescale_lo, rescale_hi]"),
    p("rescale_hi", Real, None, "rescale values to [rescale_lo, rescale_hi]"),
    p("x0", Real, None, "domain override"),
    p("x1", Real, None, "domain override"),
    p("y0", Real, None, "domain override"),
    p("y1", Real, None, "domain override"),
    p("max_iter", Integer, Some("256"), "iteration cap"),
];

const NOISE_PARAMS: &[ParamSchema] = &[
    p("noise", Choice(NOISE_MODES), Some("none"), "how noise is combined with the field"),
    p("noise_amplitude", Real, Some("0.25"), "scaled modes: noise magnitude in (0, 1]"),
    p("noise_min", Real, None, "replacement mode: lower end of the noise range"),
    p("noise_max", Real, None, "replacement mode: upper end of the noise range"),
    p("noise_clip", Bool, Some("false"), "clamp scaled-mode results to the field range"),
    p("noise_proportion", Real, Some("1"), "fraction of pixels affected"),
    p("noise_distribution", Choice(DISTRIBUTIONS), Some("uniform"), "random draw distribution"),
    p("noise_source", Choice(SOURCES), Some("random"), "random draws or Perlin noise"),
    p("perlin_cells", Real, Some("8"), "Perlin lattice cells across the larger dimension"),
];

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Real(f64),
    Integer(u32),
    Bool(bool),
    Text(String),
    List(Vec<f64>),
}

impl ParamValue {
    /// Parses `text` according to `schema`.
    pub fn parse(schema: &ParamSchema, text: &str) -> Result<Self> {
        let bad = |reason: String| Error::param(schema.name, reason);
        let text = text.trim();
        match schema.kind {
            ParamKind::Real => {
                let v: f64 = text.parse().map_err(|_| bad(format!("`{text}` is not a number")))?;
                if !v.is_finite() {
                    return Err(bad("must be finite".into()));
                }
                Ok(ParamValue::Real(v))
            }
            ParamKind::Integer => {
                let v: u32 = text.parse().map_err(|_| bad(format!("`{text}` is not a non-negative integer")))?;
                Ok(ParamValue::Integer(v))
            }
            ParamKind::Bool => match text.to_ascii_lowercase().as_str() {
                "true" | "1" | "yes" | "on" => Ok(ParamValue::Bool(true)),
                "false" | "0" | "no" | "off" => Ok(ParamValue::Bool(false)),
                _ => Err(bad(format!("`{text}` is not a boolean"))),
            },
            ParamKind::Choice(options) => {
                let lower = text.to_ascii_lowercase();
                if options.contains(&lower.as_str()) {
                    Ok(ParamValue::Text(lower))
                } else {
                    Err(bad(format!("`{text}` is not one of {}", options.join("|"))))
                }
            }
            ParamKind::RealList => {
                let values = text
                    .split(',')
                    .map(|s| s.trim().parse::<f64>().map_err(|_| bad(format!("`{s}` is not a number"))))
                    .collect::<Result<Vec<f64>>>()?;
                Ok(ParamValue::List(values))
            }
        }
    }

    /// Checks an already-typed value against `schema`, converting where lossless.
    pub fn conform(self, schema: &ParamSchema) -> Result<Self> {
        let bad = |reason: &str| Error::param(schema.name, reason);
        match (schema.kind, self) {
            (ParamKind::Real, ParamValue::Real(v)) if v.is_finite() => Ok(ParamValue::Real(v)),
            (ParamKind::Real, ParamValue::Integer(v)) => Ok(ParamValue::Real(v as f64)),
            (ParamKind::Integer, ParamValue::Integer(v)) => Ok(ParamValue::Integer(v)),
            (ParamKind::Integer, ParamValue::Real(v)) if v >= 0.0 && v <= u32::MAX as f64 && libm::trunc(v) == v => {
                Ok(ParamValue::Integer(v as u32))
            }
            (ParamKind::Bool, ParamValue::Bool(v)) => Ok(ParamValue::Bool(v)),
            (ParamKind::Choice(_), ParamValue::Text(t)) => ParamValue::parse(schema, &t),
            (ParamKind::RealList, ParamValue::List(v)) => Ok(ParamValue::List(v)),
            (ParamKind::RealList, ParamValue::Real(v)) => Ok(ParamValue::List(alloc::vec![v])),
            (_, ParamValue::Text(t)) => ParamValue::parse(schema, &t),
            (kind, _) => Err(bad(match kind {
                ParamKind::Real => "expected a finite number",
                ParamKind::Integer => "expected a non-negative integer",
                ParamKind::Bool => "expected a boolean",
                ParamKind::Choice(_) => "expected a string choice",
                ParamKind::RealList => "expected a list of numbers",
            })),
        }
    }
}

impl core::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ParamValue::Real(v) => write!(f, "{v}"),
            ParamValue::Integer(v) => write!(f, "{v}"),
            ParamValue::Bool(v) => write!(f, "{v}"),
            ParamValue::Text(t) => f.write_str(t),
            ParamValue::List(vs) => {
                for (k, v) in vs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// A test function with its parameters, resolution and seed.
#[derive(Debug, Clone, PartialEq)]
pub struct TestSpec {
    pub function: FunctionId,
    pub params: Params,
    pub width: usize,
    pub height: usize,
    pub seed: u64,
}

impl TestSpec {
    pub fn new(function: FunctionId, width: usize, height: usize) -> Self {
        TestSpec { function, params: Params::new(), width, height, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Sets a parameter from text, validating the name and the value type.
    pub fn set_param_str(&mut self, name: &str, text: &str) -> Result<()> {
        let schema = self.schema_of(name)?;
        let value = ParamValue::parse(schema, text)?;
        self.params.insert(name.to_owned(), value);
        Ok(())
    }

    /// Sets a typed parameter, validating the name and the value type.
    pub fn set_param(&mut self, name: &str, value: ParamValue) -> Result<()> {
        let schema = self.schema_of(name)?;
        let value = value.conform(schema)?;
        self.params.insert(name.to_owned(), value);
        Ok(())
    }

    pub fn with_param(mut self, name: &str, text: &str) -> Result<Self> {
        self.set_param_str(name, text)?;
        Ok(self)
    }

    fn schema_of(&self, name: &str) -> Result<&'static ParamSchema> {
        self.function.find_param(name).ok_or_else(|| Error::UnknownParameter {
            function: self.function.name().to_owned(),
            name: name.to_owned(),
        })
    }

    fn lookup(&self, name: &str) -> Result<Option<ParamValue>> {
        if let Some(v) = self.params.get(name) {
            return Ok(Some(v.clone()));
        }
        let schema = self.schema_of(name)?;
        schema.default.map(|d| ParamValue::parse(schema, d)).transpose()
    }

    fn real_opt(&self, name: &str) -> Result<Option<f64>> {
        Ok(match self.lookup(name)? {
            Some(ParamValue::Real(v)) => Some(v),
            Some(ParamValue::Integer(v)) => Some(v as f64),
            Some(_) => return Err(Error::param(name, "expected a number")),
            None => None,
        })
    }

    fn real(&self, name: &str) -> Result<f64> {
        self.real_opt(name)?.ok_or_else(|| Error::param(name, "missing"))
    }

    fn integer_opt(&self, name: &str) -> Result<Option<u32>> {
        match self.lookup(name)? {
            Some(ParamValue::Integer(v)) => Ok(Some(v)),
            Some(_) => Err(Error::param(name, "expected an integer")),
            None => Ok(None),
        }
    }

    fn integer(&self, name: &str) -> Result<u32> {
        self.integer_opt(name)?.ok_or_else(|| Error::param(name, "missing"))
    }

    fn text(&self, name: &str) -> Result<String> {
        match self.lookup(name)? {
            Some(ParamValue::Text(t)) => Ok(t),
            _ => Err(Error::param(name, "expected a choice")),
        }
    }

    fn boolean(&self, name: &str) -> Result<bool> {
        match self.lookup(name)? {
            Some(ParamValue::Bool(b)) => Ok(b),
            _ => Err(Error::param(name, "expected a boolean")),
        }
    }

    fn shape(&self, name: &str) -> Result<Shape> {
        let t = self.text(name)?;
        Shape::from_name(&t).ok_or_else(|| Error::param(name, "unknown shape"))
    }

    fn optional_domain(&self, default: Domain) -> Result<Domain> {
        let x0 = self.real_opt("x0")?.unwrap_or(default.x.0);
        let x1 = self.real_opt("x1")?.unwrap_or(default.x.1);
        let y0 = self.real_opt("y0")?.unwrap_or(default.y.0);
        let y1 = self.real_opt("y1")?.unwrap_or(default.y.1);
        let d = Domain::new(x0, x1, y0, y1);
        d.validate()?;
        Ok(d)
    }

    /// Checks names, value types and function invariants without generating.
    pub fn validate(&self) -> Result<()> {
        crate::field::check_dimensions(self.width, self.height)?;
        for (name, value) in &self.params {
            let schema = self.schema_of(name)?;
            value.clone().conform(schema)?;
        }
        self.surface()?;
        self.noise_options()?;
        self.rescale()?;
        Ok(())
    }

    /// The clean (noise-free) test function.
    pub fn surface(&self) -> Result<Box<dyn Surface + Send + Sync>> {
        Ok(match self.function {
            FunctionId::Step => match self.lookup("A")? {
                Some(ParamValue::List(values)) => Box::new(Step::new(values)?),
                _ => return Err(Error::param("A", "expected a list of numbers")),
            },
            FunctionId::Gradient => Box::new(Gradient::new(
                self.real("r")?,
                self.real("R")?,
                self.integer("b")?,
                self.shape("T_x")?,
                self.shape("T_y")?,
            )?),
            FunctionId::MinMaxSaddle => Box::new(MinMaxSaddle::with_domain(
                self.real("o")?,
                self.real("p")?,
                self.real("m")?,
                self.optional_domain(MinMaxSaddle::DEFAULT_DOMAIN)?,
            )?),
            FunctionId::RidgeValley => {
                let b = self.integer("b")?;
                Box::new(RidgeValley::with_y_exponent(
                    self.real("r")?,
                    self.real("R")?,
                    b,
                    self.integer_opt("b_y")?.unwrap_or(b),
                    self.shape("T_x")?,
                    self.shape("T_y")?,
                )?)
            }
            FunctionId::Frequency => Box::new(Frequency::new(self.integer("D")?, self.real("W")?, self.real("u")?)?),
            FunctionId::Threshold => {
                let t = self.text("T")?;
                let kind = ThresholdType::from_name(&t).ok_or_else(|| Error::param("T", "unknown type"))?;
                Box::new(Threshold::new(self.real("m")?, self.real("M")?, self.real("t")?, kind, self.integer("b")?)?)
            }
            FunctionId::LittleBit => Box::new(LittleBit::new(
                self.real("m")?,
                self.real("M")?,
                self.real("g_m")?,
                self.real("g_M")?,
                self.integer("groove_count")?,
            )?),
            FunctionId::Collection(c) => {
                let mut col = Collection::new(c);
                col = col.with_domain(self.optional_domain(c.default_domain())?)?;
                if c == CollectionFunction::Mandelbrot {
                    col = col.with_max_iter(self.integer("max_iter")?)?;
                }
                Box::new(col)
            }
        })
    }

    /// Target range for collection functions, if requested.
    pub fn rescale(&self) -> Result<Option<(f64, f64)>> {
        if !matches!(self.function, FunctionId::Collection(_)) {
            return Ok(None);
        }
        match (self.real_opt("rescale_lo")?, self.real_opt("rescale_hi")?) {
            (Some(lo), Some(hi)) if lo < hi => Ok(Some((lo, hi))),
            (None, None) => Ok(None),
            _ => Err(Error::param("rescale_lo", "rescaling needs rescale_lo < rescale_hi")),
        }
    }

    /// Noise layered on top of the field, or `None` for `noise=none`.
    pub fn noise_options(&self) -> Result<Option<NoiseOptions>> {
        let mode = match self.text("noise")?.as_str() {
            "none" => return Ok(None),
            other => NoiseMode::from_name(other).ok_or_else(|| Error::param("noise", "unknown mode"))?,
        };
        let replacement_range = match (self.real_opt("noise_min")?, self.real_opt("noise_max")?) {
            (Some(lo), Some(hi)) => Some((lo, hi)),
            _ => None,
        };
        let distribution = Distribution::from_name(&self.text("noise_distribution")?)
            .ok_or_else(|| Error::param("noise_distribution", "unknown distribution"))?;
        let source = match self.text("noise_source")?.as_str() {
            "perlin" => NoiseSource::Perlin { cells: self.real("perlin_cells")? },
            _ => NoiseSource::Random,
        };
        let opts = NoiseOptions {
            mode,
            amplitude: self.real("noise_amplitude")?,
            replacement_range,
            clipping: self.boolean("noise_clip")?,
            proportion: self.real("noise_proportion")?,
            distribution,
            source,
            seed: self.seed,
        };
        opts.validate()?;
        Ok(Some(opts))
    }

    /// Human-readable warnings (currently: frequency aliasing).
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.function == FunctionId::Frequency {
            if let Ok(d) = self.integer("D") {
                if let Ok(f) = Frequency::new(d, 1.0, 0.0) {
                    if f.aliasing_risk(self.width) {
                        out.push(format!(
                            "frequency test: only {:.1} pixels per period of the highest frequency at width {}; expect aliasing",
                            f.pixels_per_period(self.width),
                            self.width
                        ));
                    }
                }
            }
        }
        out
    }

    /// Generates the field sequentially: rasterize, rescale, add noise.
    pub fn generate(&self) -> Result<ScalarField> {
        crate::field::check_dimensions(self.width, self.height)?;
        let surface = self.surface()?;
        let field = ScalarField::sample(&surface, self.width, self.height)?;
        self.finish(field)
    }

    /// Applies rescaling and noise to a rasterized clean field.
    pub fn finish(&self, mut field: ScalarField) -> Result<ScalarField> {
        if let Some((lo, hi)) = self.rescale()? {
            field.rescale(lo, hi);
        }
        if let Some(opts) = self.noise_options()? {
            let range = self.noise_range(&field)?;
            let mut noisy = apply_noise(&field, range, &opts)?;
            noisy.value_range_hint = field.value_range_hint;
            field = noisy;
        }
        Ok(field)
    }

    /// `[m, M]` used by the scaled noise modes: the clean field's value range.
    pub fn noise_range(&self, clean: &ScalarField) -> Result<(f64, f64)> {
        match clean.value_range() {
            Some((lo, hi)) if lo < hi => Ok((lo, hi)),
            Some((lo, hi)) => Err(Error::InvalidFieldRange(lo, hi)),
            None => Err(Error::InvalidFieldRange(f64::NAN, f64::NAN)),
        }
    }

    /// Parameter values with schema defaults filled in, in schema order.
    pub fn resolved_params(&self) -> Vec<(&'static str, Option<ParamValue>)> {
        self.function
            .schema()
            .map(|s| (s.name, self.lookup(s.name).ok().flatten()))
            .collect()
    }
}

impl core::fmt::Display for FunctionId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for FunctionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FunctionId::from_name(s)
    }
}

/// Names of every function, in catalog order.
pub fn function_names() -> Vec<String> {
    FunctionId::all().map(|f| f.name().to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_function_generates_with_defaults() {
        for f in FunctionId::all() {
            let spec = TestSpec::new(f, 24, 16);
            spec.validate().unwrap_or_else(|e| panic!("{}: {e}", f.name()));
            let field = spec.generate().unwrap();
            assert!(field.values().iter().all(|v| v.is_finite()), "{}", f.name());
        }
    }

    #[test]
    fn names_round_trip() {
        for f in FunctionId::all() {
            assert_eq!(FunctionId::from_name(f.name()).unwrap(), f);
        }
        assert_eq!(FunctionId::from_name("min_max_saddle").unwrap(), FunctionId::MinMaxSaddle);
        assert!(matches!(FunctionId::from_name("marschner_lobb"), Err(Error::UnknownFunction(_))));
    }

    #[test]
    fn unknown_and_malformed_params() {
        let mut spec = TestSpec::new(FunctionId::Threshold, 8, 8);
        assert!(matches!(spec.set_param_str("q", "1"), Err(Error::UnknownParameter { .. })));
        assert!(spec.set_param_str("m", "abc").is_err());
        assert!(spec.set_param_str("T", "wavy").is_err());
        assert!(spec.set_param_str("b", "-2").is_err());
        spec.set_param_str("T", "FLAT").unwrap();
        assert_eq!(spec.params["T"], ParamValue::Text("flat".into()));
    }

    #[test]
    fn invariants_surface_through_validate() {
        let spec = TestSpec::new(FunctionId::Threshold, 8, 8).with_param("t", "5").unwrap();
        assert!(spec.validate().is_err());
        let spec = TestSpec::new(FunctionId::Gradient, 8, 8).with_param("b", "0").unwrap();
        assert!(spec.validate().is_err());
        let spec = TestSpec::new(FunctionId::Step, 8, 8).with_param("A", "0,1,1").unwrap();
        assert!(spec.validate().is_err());
        let spec = TestSpec::new(FunctionId::Gradient, 8, 8).with_param("noise", "replacement").unwrap();
        assert_eq!(spec.validate().unwrap_err(), Error::MissingReplacementRange);
    }

    #[test]
    fn fig10_threshold_params() {
        let spec = TestSpec::new(FunctionId::Threshold, 100, 100)
            .with_param("m", "-63")
            .and_then(|s| s.with_param("M", "53"))
            .and_then(|s| s.with_param("t", "0"))
            .and_then(|s| s.with_param("T", "flat"))
            .and_then(|s| s.with_param("b", "2"))
            .unwrap();
        let field = spec.generate().unwrap();
        let (lo, hi) = field.min_max().unwrap();
        assert!(lo > -63.0 && lo < -60.0);
        assert!(hi < 53.0 && hi > 50.0);
    }

    #[test]
    fn rescale_collection() {
        let spec = TestSpec::new(FunctionId::Collection(CollectionFunction::Schwefel), 16, 16)
            .with_param("rescale_lo", "-1")
            .and_then(|s| s.with_param("rescale_hi", "1"))
            .unwrap();
        let f = spec.generate().unwrap();
        assert_eq!(f.min_max(), Some((-1.0, 1.0)));
        let bad = TestSpec::new(FunctionId::Collection(CollectionFunction::Schwefel), 4, 4)
            .with_param("rescale_lo", "1")
            .unwrap();
        assert!(bad.validate().is_err());
    }

    #[test]
    fn noise_is_seeded() {
        let base = TestSpec::new(FunctionId::Gradient, 32, 32)
            .with_param("noise", "range_scaled")
            .and_then(|s| s.with_param("noise_proportion", "0.5"))
            .unwrap();
        let a = base.clone().with_seed(1).generate().unwrap();
        let b = base.clone().with_seed(1).generate().unwrap();
        let c = base.with_seed(2).generate().unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn aliasing_warning() {
        let spec = TestSpec::new(FunctionId::Frequency, 32, 8).with_param("D", "20").unwrap();
        assert_eq!(spec.warnings().len(), 1);
        let spec = TestSpec::new(FunctionId::Frequency, 4096, 8);
        assert!(spec.warnings().is_empty());
    }

    #[test]
    fn typed_params_conform() {
        let mut spec = TestSpec::new(FunctionId::Gradient, 8, 8);
        spec.set_param("b", ParamValue::Real(2.0)).unwrap();
        assert_eq!(spec.params["b"], ParamValue::Integer(2));
        assert!(spec.set_param("b", ParamValue::Real(2.5)).is_err());
        spec.set_param("T_x", ParamValue::Text("concave".into())).unwrap();
    }
}
