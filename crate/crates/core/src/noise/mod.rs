//! Noise sources and the ways noise is combined with a test field.
//!
//! A noise value is either a random draw (uniform, normal, beta-like) or a
//! Perlin sample. It is applied per pixel in one of four modes:
//!
//! * `MaxScaled`:   `v + n·(v − m)/(M − m)`, strongest near `M`
//! * `MinScaled`:   `v + n·(M − v)/(M − m)`, strongest near `m`
//! * `RangeScaled`: `v + n·(M − m)`
//! * `Replacement`: `v` is replaced by a value in `[n_min, n_max]`
//!
//! with `n ∈ [−amplitude, amplitude]` for the scaled modes. Only a seeded,
//! hash-selected `proportion` of pixels is touched. All draws are
//! counter-based, so applying noise is deterministic per pixel.

pub mod hash;
mod perlin;

use core::f64::consts::PI;

use libm::{cos, fabs, log, sin, sqrt};

pub use perlin::{perlin2, Perlin};

use crate::error::{Error, Result};
use crate::field::ScalarField;
use hash::{stream, uniform};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseMode {
    MaxScaled,
    MinScaled,
    RangeScaled,
    Replacement,
}

impl NoiseMode {
    pub const ALL: [NoiseMode; 4] =
        [NoiseMode::MaxScaled, NoiseMode::MinScaled, NoiseMode::RangeScaled, NoiseMode::Replacement];

    pub fn name(self) -> &'static str {
        match self {
            NoiseMode::MaxScaled => "max_scaled",
            NoiseMode::MinScaled => "min_scaled",
            NoiseMode::RangeScaled => "range_scaled",
            NoiseMode::Replacement => "replacement",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distribution {
    Uniform,
    Normal,
    /// `sin²(r·π/2)` of a uniform `r`: the arcsine law, Beta(0.5, 0.5).
    Beta,
    /// Beta folded at its median onto the low end: `2·min(b, 1 − b)`.
    BetaLeft,
    /// Mirror image of [`Distribution::BetaLeft`], mass at the high end.
    BetaRight,
}

impl Distribution {
    pub const ALL: [Distribution; 5] = [
        Distribution::Uniform,
        Distribution::Normal,
        Distribution::Beta,
        Distribution::BetaLeft,
        Distribution::BetaRight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Normal => "normal",
            Distribution::Beta => "beta",
            Distribution::BetaLeft => "beta_left",
            Distribution::BetaRight => "beta_right",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|d| d.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseSource {
    Random,
    /// Perlin noise with `cells` lattice cells across the larger field dimension.
    Perlin { cells: f64 },
}

impl NoiseSource {
    pub const DEFAULT_PERLIN_CELLS: f64 = 8.0;

    pub fn perlin() -> Self {
        NoiseSource::Perlin { cells: Self::DEFAULT_PERLIN_CELLS }
    }
}

/// Raw draw for pixel `index`. `Normal` is an unbounded standard normal;
/// every other distribution lies in `[0, 1]`.
pub fn sample_distribution(dist: Distribution, seed: u64, index: u64) -> f64 {
    let r = uniform(seed, index, stream::DRAW_A);
    match dist {
        Distribution::Uniform => r,
        Distribution::Normal => {
            // Box-Muller; the sine half of the pair is discarded.
            let r2 = uniform(seed, index, stream::DRAW_B);
            sqrt(-2.0 * log(1.0 - r)) * cos(2.0 * PI * r2)
        }
        Distribution::Beta => beta_transform(r),
        Distribution::BetaLeft => beta_left(beta_transform(r)),
        Distribution::BetaRight => 1.0 - beta_left(beta_transform(r)),
    }
}

#[inline]
pub fn beta_transform(r: f64) -> f64 {
    let s = sin(r * PI / 2.0);
    s * s
}

#[inline]
fn beta_left(b: f64) -> f64 {
    2.0 * b.min(1.0 - b)
}

/// Maps a draw onto `[0, 1]`. Normal draws are spread so that ±3σ covers
/// the interval, then clamped.
pub fn unit_draw(dist: Distribution, seed: u64, index: u64) -> f64 {
    let v = sample_distribution(dist, seed, index);
    match dist {
        Distribution::Normal => (0.5 + v / 6.0).clamp(0.0, 1.0),
        _ => v,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseOptions {
    pub mode: NoiseMode,
    /// Maximum noise magnitude for the scaled modes, in `(0, 1]`.
    pub amplitude: f64,
    /// `[n_min, n_max]` for replacement mode.
    pub replacement_range: Option<(f64, f64)>,
    /// Clamp scaled-mode results to `[m, M]`.
    pub clipping: bool,
    /// Fraction of pixels affected, in `[0, 1]`.
    pub proportion: f64,
    pub distribution: Distribution,
    pub source: NoiseSource,
    pub seed: u64,
}

impl Default for NoiseOptions {
    fn default() -> Self {
        NoiseOptions {
            mode: NoiseMode::RangeScaled,
            amplitude: 0.25,
            replacement_range: None,
            clipping: false,
            proportion: 1.0,
            distribution: Distribution::Uniform,
            source: NoiseSource::Random,
            seed: 0,
        }
    }
}

impl NoiseOptions {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.proportion) {
            return Err(Error::param("proportion", "must be in [0, 1]"));
        }
        match self.mode {
            NoiseMode::Replacement => match self.replacement_range {
                Some((lo, hi)) if lo.is_finite() && hi.is_finite() && lo < hi => {}
                _ => return Err(Error::MissingReplacementRange),
            },
            _ => {
                if !(self.amplitude > 0.0 && self.amplitude <= 1.0) {
                    return Err(Error::param("amplitude", "must be in (0, 1]"));
                }
            }
        }
        if let NoiseSource::Perlin { cells } = self.source {
            if !(cells.is_finite() && cells > 0.0) {
                return Err(Error::param("perlin_cells", "must be positive"));
            }
        }
        Ok(())
    }
}

/// Noise prepared for one field shape. [`NoisePlan::apply_at`] is a pure
/// function of the pixel, so callers may evaluate pixels in any order.
#[derive(Debug, Clone)]
pub struct NoisePlan {
    opts: NoiseOptions,
    m: f64,
    big_m: f64,
    width: usize,
    perlin: Option<PerlinSampler>,
}

#[derive(Debug, Clone)]
struct PerlinSampler {
    noise: Perlin,
    scale: f64,
    norm: f64,
}

impl PerlinSampler {
    fn raw(&self, i: usize, j: usize) -> f64 {
        self.noise.eval((i as f64 + 0.5) * self.scale, (j as f64 + 0.5) * self.scale)
    }
}

impl NoisePlan {
    pub fn new(width: usize, height: usize, range: (f64, f64), opts: NoiseOptions) -> Result<Self> {
        opts.validate()?;
        let (m, big_m) = range;
        if !(m.is_finite() && big_m.is_finite() && m < big_m) {
            return Err(Error::InvalidFieldRange(m, big_m));
        }
        let perlin = match opts.source {
            NoiseSource::Random => None,
            NoiseSource::Perlin { cells } => {
                let mut sampler = PerlinSampler {
                    noise: Perlin::new(opts.seed),
                    scale: cells / width.max(height).max(1) as f64,
                    norm: 1.0,
                };
                let mut peak = 0.0f64;
                for j in 0..height {
                    for i in 0..width {
                        peak = peak.max(fabs(sampler.raw(i, j)));
                    }
                }
                if peak > 0.0 {
                    sampler.norm = peak;
                }
                Some(sampler)
            }
        };
        Ok(NoisePlan { opts, m, big_m, width, perlin })
    }

    pub fn options(&self) -> &NoiseOptions {
        &self.opts
    }

    pub fn is_selected(&self, index: usize) -> bool {
        uniform(self.opts.seed, index as u64, stream::SELECT) < self.opts.proportion
    }

    /// Noise in `[−1, 1]` before amplitude scaling.
    fn signed_noise(&self, index: usize) -> f64 {
        match &self.perlin {
            Some(p) => p.raw(index % self.width, index / self.width) / p.norm,
            None => 2.0 * unit_draw(self.opts.distribution, self.opts.seed, index as u64) - 1.0,
        }
    }

    /// Output value of pixel `index` (row-major) whose input value is `v`.
    pub fn apply_at(&self, index: usize, v: f64) -> f64 {
        if !self.is_selected(index) {
            return v;
        }
        let (m, big_m) = (self.m, self.big_m);
        let s = self.signed_noise(index);
        let out = match self.opts.mode {
            NoiseMode::Replacement => {
                let (lo, hi) = self.opts.replacement_range.expect("validated");
                return lo + (s + 1.0) / 2.0 * (hi - lo);
            }
            NoiseMode::MaxScaled => v + self.opts.amplitude * s * (v - m) / (big_m - m),
            NoiseMode::MinScaled => v + self.opts.amplitude * s * (big_m - v) / (big_m - m),
            NoiseMode::RangeScaled => v + self.opts.amplitude * s * (big_m - m),
        };
        if self.opts.clipping {
            out.clamp(m, big_m)
        } else {
            out
        }
    }
}

/// Applies noise to every pixel of `field`; `range` is the field's `[m, M]`.
pub fn apply_noise(field: &ScalarField, range: (f64, f64), opts: &NoiseOptions) -> Result<ScalarField> {
    let plan = NoisePlan::new(field.width(), field.height(), range, *opts)?;
    let mut out = field.clone();
    for (index, v) in out.values_mut().iter_mut().enumerate() {
        *v = plan.apply_at(index, *v);
    }
    Ok(out)
}
