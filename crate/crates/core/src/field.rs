//! Scalar fields sampled on a rectangular grid.
//!
//! Pixel `(i, j)` covers the cell whose center is
//! `x = x0 + (i + 0.5)·(x1 − x0)/width`, `y = y0 + (j + 0.5)·(y1 − y0)/height`.
//! Values are stored row-major with `j` (the y index) as the row.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Physical rectangle a field is sampled over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl Domain {
    pub const fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Domain { x: (x0, x1), y: (y0, y1) }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && a != b;
        if ok(self.x) && ok(self.y) {
            Ok(())
        } else {
            Err(Error::DegenerateDomain)
        }
    }

    #[inline]
    pub fn pixel_center(&self, i: usize, j: usize, width: usize, height: usize) -> (f64, f64) {
        let x = self.x.0 + (i as f64 + 0.5) * (self.x.1 - self.x.0) / width as f64;
        let y = self.y.0 + (j as f64 + 0.5) * (self.y.1 - self.y.0) / height as f64;
        (x, y)
    }
}

/// A closed-form function over a fixed domain. Every test function
/// implements this, so fields can be rasterized at any resolution.
pub trait Surface {
    fn domain(&self) -> Domain;
    fn eval(&self, x: f64, y: f64) -> f64;
}

impl<S: Surface + ?Sized> Surface for &S {
    fn domain(&self) -> Domain {
        (**self).domain()
    }
    fn eval(&self, x: f64, y: f64) -> f64 {
        (**self).eval(x, y)
    }
}

impl<S: Surface + ?Sized> Surface for alloc::boxed::Box<S> {
    fn domain(&self) -> Domain {
        (**self).domain()
    }
    fn eval(&self, x: f64, y: f64) -> f64 {
        (**self).eval(x, y)
    }
}

/// Returns `width * height` when both are positive and the product fits.
pub fn check_dimensions(width: usize, height: usize) -> Result<usize> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions { width, height });
    }
    width.checked_mul(height).ok_or(Error::InvalidDimensions { width, height })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    width: usize,
    height: usize,
    values: Vec<f64>,
    domain: Domain,
    pub value_range_hint: Option<(f64, f64)>,
}

impl ScalarField {
    pub fn new(width: usize, height: usize, values: Vec<f64>, domain: Domain) -> Result<Self> {
        let expected = check_dimensions(width, height)?;
        if values.len() != expected {
            return Err(Error::ShapeMismatch { expected, actual: values.len() });
        }
        domain.validate()?;
        Ok(ScalarField { width, height, values, domain, value_range_hint: None })
    }

    /// Rasterizes `surface` at pixel centers, row by row.
    pub fn sample<S: Surface + ?Sized>(surface: &S, width: usize, height: usize) -> Result<Self> {
        let domain = surface.domain();
        check_dimensions(width, height)?;
        domain.validate()?;
        let mut values = Vec::with_capacity(width * height);
        for j in 0..height {
            for i in 0..width {
                let (x, y) = domain.pixel_center(i, j, width, height);
                values.push(surface.eval(x, y));
            }
        }
        Self::new(width, height, values, domain)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.width + i
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[self.index(i, j)]
    }

    pub fn pixel_center(&self, i: usize, j: usize) -> (f64, f64) {
        self.domain.pixel_center(i, j, self.width, self.height)
    }

    /// (min, max) over finite values; `None` when there are none.
    pub fn min_max(&self) -> Option<(f64, f64)> {
        self.values.iter().filter(|v| v.is_finite()).fold(None, |acc, &v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
    }

    /// The hint if set, otherwise the observed value range.
    pub fn value_range(&self) -> Option<(f64, f64)> {
        self.value_range_hint.or_else(|| self.min_max())
    }

    /// Affinely maps the observed value range onto `(lo, hi)`. Constant fields
    /// map to the midpoint.
    pub fn rescale(&mut self, lo: f64, hi: f64) {
        if let Some((min, max)) = self.min_max() {
            let span = max - min;
            for v in &mut self.values {
                *v = if span > 0.0 { lo + (*v - min) / span * (hi - lo) } else { 0.5 * (lo + hi) };
            }
            self.value_range_hint = Some((lo, hi));
        }
    }
}
