//! Continuous colormaps built from ordered keys.
//!
//! A key carries a left and a right color. When they differ the key is a
//! *twin key* and the map jumps there; sampling is right-continuous, so the
//! exact key position takes the right color.

use alloc::vec::Vec;

use crate::color::{Color, ColorSpace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InterpolationSpace {
    Lab,
    Din99,
    Srgb,
}

impl InterpolationSpace {
    pub fn color_space(self) -> ColorSpace {
        match self {
            InterpolationSpace::Lab => ColorSpace::Lab,
            InterpolationSpace::Din99 => ColorSpace::Din99,
            InterpolationSpace::Srgb => ColorSpace::Srgb,
        }
    }

    pub fn name(self) -> &'static str {
        self.color_space().name()
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match ColorSpace::from_name(name)? {
            ColorSpace::Lab => Some(InterpolationSpace::Lab),
            ColorSpace::Din99 => Some(InterpolationSpace::Din99),
            ColorSpace::Srgb => Some(InterpolationSpace::Srgb),
            ColorSpace::Xyz => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColormapKey {
    pub position: f64,
    pub left: Color,
    pub right: Color,
}

impl ColormapKey {
    pub fn new(position: f64, color: Color) -> Self {
        ColormapKey { position, left: color, right: color }
    }

    pub fn twin(position: f64, left: Color, right: Color) -> Self {
        ColormapKey { position, left, right }
    }

    pub fn is_twin(&self) -> bool {
        self.left != self.right
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColormapSpec {
    keys: Vec<ColormapKey>,
    space: InterpolationSpace,
    nan_color: Color,
    // (left, right) key colors in the interpolation space
    nodes: Vec<([f64; 3], [f64; 3])>,
}

impl ColormapSpec {
    pub fn new(keys: Vec<ColormapKey>, space: InterpolationSpace, nan_color: Color) -> Result<Self> {
        if keys.len() < 2 {
            return Err(Error::TooFewKeys(keys.len()));
        }
        for (index, key) in keys.iter().enumerate() {
            if !key.position.is_finite() {
                return Err(Error::NonFiniteKeyPosition(key.position));
            }
            if !key.left.is_finite() || !key.right.is_finite() {
                return Err(Error::NonFiniteColor);
            }
            if index > 0 {
                let prev = keys[index - 1].position;
                if key.position == prev {
                    return Err(Error::DuplicateKeyPosition(key.position));
                }
                if key.position < prev {
                    return Err(Error::UnorderedKeys { index, position: key.position });
                }
            }
        }
        let target = space.color_space();
        let nodes = keys
            .iter()
            .map(|k| (k.left.to(target).components(), k.right.to(target).components()))
            .collect();
        Ok(ColormapSpec { keys, space, nan_color, nodes })
    }

    /// Like [`ColormapSpec::new`], additionally checking that `range` matches the
    /// first and last key positions.
    pub fn with_range(
        keys: Vec<ColormapKey>,
        space: InterpolationSpace,
        nan_color: Color,
        range: (f64, f64),
    ) -> Result<Self> {
        let spec = Self::new(keys, space, nan_color)?;
        if spec.range() != range {
            return Err(Error::RangeMismatch { min: range.0, max: range.1 });
        }
        Ok(spec)
    }

    /// Two-key map from LAB black to LAB white over `[min, max]`, interpolated in
    /// LAB: equal value steps give equal LAB distances.
    pub fn grayscale(min: f64, max: f64) -> Result<Self> {
        Self::new(
            alloc::vec![
                ColormapKey::new(min, Color::lab(0.0, 0.0, 0.0)),
                ColormapKey::new(max, Color::lab(100.0, 0.0, 0.0)),
            ],
            InterpolationSpace::Lab,
            Color::srgb(1.0, 0.0, 1.0),
        )
    }

    pub fn keys(&self) -> &[ColormapKey] {
        &self.keys
    }

    pub fn interpolation_space(&self) -> InterpolationSpace {
        self.space
    }

    pub fn nan_color(&self) -> Color {
        self.nan_color
    }

    pub fn range(&self) -> (f64, f64) {
        (self.keys[0].position, self.keys[self.keys.len() - 1].position)
    }

    /// Returns a copy with the interpolation space replaced.
    pub fn with_interpolation_space(&self, space: InterpolationSpace) -> Self {
        Self::new(self.keys.clone(), space, self.nan_color).expect("keys already validated")
    }

    /// Color at data value `v`, expressed in the interpolation space
    /// (the NaN color is returned as stored).
    pub fn sample(&self, v: f64) -> Color {
        if v.is_nan() {
            return self.nan_color;
        }
        Color::raw(self.space.color_space(), self.sample_components(v))
    }

    /// Components of [`ColormapSpec::sample`] for finite or infinite `v`.
    pub fn sample_components(&self, v: f64) -> [f64; 3] {
        let last = self.keys.len() - 1;
        if v <= self.keys[0].position {
            return self.nodes[0].1;
        }
        if v >= self.keys[last].position {
            return self.nodes[last].1;
        }
        // first key with position > v; 1..=last because of the clamps above
        let upper = self.keys.partition_point(|k| k.position <= v);
        let lower = upper - 1;
        let p0 = self.keys[lower].position;
        if v == p0 {
            return self.nodes[lower].1;
        }
        let p1 = self.keys[upper].position;
        let t = (v - p0) / (p1 - p0);
        Color::lerp_components(self.nodes[lower].1, self.nodes[upper].0, t)
    }
}
