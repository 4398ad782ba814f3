//! 8-bit RGB rendering of fields and evaluation panels.
//!
//! Images are stored top row first. Field row `j = 0` is the bottom of the
//! domain (`y0`), so rendering flips vertically.

use alloc::vec;
use alloc::vec::Vec;

use crate::color::Color;
use crate::colormap::{ColormapKey, ColormapSpec, InterpolationSpace};
use crate::error::{Error, Result};
use crate::evaluation::{Aggregation, EvaluationBundle, FieldKind};
use crate::field::ScalarField;

/// Row-major RGB8 image, top row first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl Image {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        let n = crate::field::check_dimensions(width, height)?;
        if pixels.len() != n * 3 {
            return Err(Error::ShapeMismatch { expected: n * 3, actual: pixels.len() });
        }
        Ok(Image { width, height, pixels })
    }

    pub fn filled(width: usize, height: usize, rgb: [u8; 3]) -> Result<Self> {
        let n = crate::field::check_dimensions(width, height)?;
        let mut pixels = vec![0u8; n * 3];
        for px in pixels.chunks_exact_mut(3) {
            px.copy_from_slice(&rgb);
        }
        Ok(Image { width, height, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    /// Pixel at image column `x`, image row `y` (row 0 at the top).
    pub fn get(&self, x: usize, y: usize) -> Option<[u8; 3]> {
        if x >= self.width || y >= self.height {
            return None;
        }
        let k = (y * self.width + x) * 3;
        Some([self.pixels[k], self.pixels[k + 1], self.pixels[k + 2]])
    }
}

/// Maps every field value through `cmap`, one image pixel per field sample.
pub fn render_field(field: &ScalarField, cmap: &ColormapSpec) -> Image {
    let (w, h) = (field.width(), field.height());
    let mut pixels = vec![0u8; w * h * 3];
    for (row, out) in pixels.chunks_exact_mut(w * 3).enumerate() {
        let j = h - 1 - row;
        for i in 0..w {
            let rgb = cmap.sample(field.values()[j * w + i]).to_rgb8();
            out[i * 3..i * 3 + 3].copy_from_slice(&rgb);
        }
    }
    Image { width: w, height: h, pixels }
}

/// White (no difference) to black (maximal difference) over `[0, 1]`.
pub fn difference_colormap() -> ColormapSpec {
    ColormapSpec::new(
        vec![
            ColormapKey::new(0.0, Color::lab(100.0, 0.0, 0.0)),
            ColormapKey::new(1.0, Color::lab(0.0, 0.0, 0.0)),
        ],
        InterpolationSpace::Lab,
        Color::srgb(1.0, 0.0, 1.0),
    )
    .expect("static colormap is valid")
}

/// Diverging map over `[−1, 1]`: red where the colormap exaggerates the data
/// (negative subtraction), white where it is faithful, blue where it hides
/// differences (positive subtraction).
pub fn subtraction_colormap() -> ColormapSpec {
    ColormapSpec::new(
        vec![
            ColormapKey::new(-1.0, Color::srgb(0.70, 0.09, 0.17)),
            ColormapKey::new(0.0, Color::lab(100.0, 0.0, 0.0)),
            ColormapKey::new(1.0, Color::srgb(0.13, 0.40, 0.67)),
        ],
        InterpolationSpace::Lab,
        Color::srgb(1.0, 0.0, 1.0),
    )
    .expect("static colormap is valid")
}

/// Grayscale over the field's value range (a constant field renders mid-gray).
pub fn grayscale_for(field: &ScalarField) -> ColormapSpec {
    let (lo, hi) = field.value_range().unwrap_or((0.0, 1.0));
    if lo < hi {
        ColormapSpec::grayscale(lo, hi).expect("finite increasing range")
    } else {
        ColormapSpec::grayscale(lo - 1.0, lo + 1.0).expect("finite increasing range")
    }
}

/// Names of the panels produced by [`render_evaluation`], in order.
pub const PANEL_NAMES: [&str; 5] = ["grayscale", "mapped", "value", "color", "subtraction"];

/// Renders one panel of an evaluation bundle by name.
pub fn render_panel(bundle: &EvaluationBundle, panel: &str, how: Aggregation) -> Option<Image> {
    Some(match panel {
        "grayscale" => render_field(&bundle.field, &grayscale_for(&bundle.field)),
        "mapped" => render_field(&bundle.field, &bundle.colormap),
        "value" => render_field(&bundle.aggregated(FieldKind::Value, how), &difference_colormap()),
        "color" => render_field(&bundle.aggregated(FieldKind::Color, how), &difference_colormap()),
        "subtraction" => render_field(&bundle.aggregated(FieldKind::Subtraction, how), &subtraction_colormap()),
        _ => return None,
    })
}

/// All five panels, in [`PANEL_NAMES`] order.
pub fn render_evaluation(bundle: &EvaluationBundle, how: Aggregation) -> Vec<(&'static str, Image)> {
    PANEL_NAMES
        .iter()
        .map(|&name| (name, render_panel(bundle, name, how).expect("known panel")))
        .collect()
}
