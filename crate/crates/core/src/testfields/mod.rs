//! Analytic test functions for colormap evaluation.
//!
//! Each generator is a [`Surface`](crate::field::Surface): a closed-form
//! function over a fixed domain. Rasterizing at any resolution is just
//! evaluation at pixel centers, so there is no accumulated state and two
//! resolutions agree wherever their sample points coincide.

pub mod collection;
mod local;

pub use collection::{Collection, CollectionFunction};
pub use local::{
    Frequency, Gradient, LittleBit, MinMaxSaddle, RidgeValley, Step, Threshold, ALIASING_MIN_PIXELS_PER_PERIOD,
};

use libm::pow;

use crate::error::{Error, Result};

/// Shape of a one-dimensional profile between two values.
///
/// For the gradient and the `y` profile of ridges, `Concave` means a
/// decreasing slope (`1 − (1 − t)^b`) and `Convex` an increasing one (`t^b`).
/// `Linear` ignores the exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Linear,
    Concave,
    Convex,
}

impl Shape {
    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "linear" => Some(Shape::Linear),
            "concave" => Some(Shape::Concave),
            "convex" => Some(Shape::Convex),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Shape::Linear => "linear",
            Shape::Concave => "concave",
            Shape::Convex => "convex",
        }
    }

    /// Profile on `[0, 1]` with `p(0) = 0` and `p(1) = 1`.
    #[inline]
    pub(crate) fn profile(self, t: f64, exponent: u32) -> f64 {
        match self {
            // Exponent 1 collapses every shape to the identity; return it
            // directly so all shapes agree bit-for-bit.
            _ if exponent == 1 => t,
            Shape::Linear => t,
            Shape::Concave => 1.0 - pow(1.0 - t, exponent as f64),
            Shape::Convex => pow(t, exponent as f64),
        }
    }
}

/// Gradient type of the threshold test near the isoline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThresholdType {
    Linear,
    Flat,
    Steep,
}

impl ThresholdType {
    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "linear" => Some(ThresholdType::Linear),
            "flat" => Some(ThresholdType::Flat),
            "steep" => Some(ThresholdType::Steep),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ThresholdType::Linear => "linear",
            ThresholdType::Flat => "flat",
            ThresholdType::Steep => "steep",
        }
    }
}

pub(crate) fn check_exponent(name: &str, b: u32) -> Result<()> {
    if b < 1 {
        Err(Error::param(name, "exponent must be an integer >= 1"))
    } else {
        Ok(())
    }
}

pub(crate) fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, "must be finite"))
    }
}
