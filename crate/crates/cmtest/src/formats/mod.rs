//! File formats: scalar fields, images, colormap specs and test specs.

pub mod colormap;
pub mod field;
pub mod image;
pub mod testspec;

pub use colormap::{parse_spec, serialize_spec, ColormapDocument};
pub use field::{load_field, write_field, FieldFormat};
pub use image::{encode_png, encode_ppm, write_image, ImageFormat};
pub use testspec::{parse_test_spec, TestSpecDocument};
