//! Analytic test fields and perceptual evaluation for continuous colormaps.
//!
//! This crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs: field generators are closed-form surfaces, noise
//! is counter-based, and the evaluation pipeline performs fixed-order
//! reductions, so results are bit-stable however callers schedule the work.
//! File formats, the CLI and the HTTP service live in the `cmtest` crate.

#![no_std]

extern crate alloc;

pub mod catalog;
pub mod color;
pub mod colormap;
pub mod error;
pub mod evaluation;
pub mod field;
pub mod noise;
pub mod raster;
pub mod testfields;

pub use catalog::{FunctionId, ParamValue, Params, TestSpec};
pub use color::{Color, ColorSpace, De94Params, DifferenceMetric};
pub use colormap::{ColormapKey, ColormapSpec};
pub use error::{Error, Result};
pub use evaluation::{Aggregation, EvaluationBundle, NeighborDifferenceField, Normalization};
pub use field::{Domain, ScalarField, Surface};
pub use noise::{NoiseOptions, NoiseMode, Distribution, NoiseSource};
pub use raster::Image;
