//! Colormap testing toolkit: parallel field generation, file formats,
//! evaluation reports, the `cmtest` command line and an HTTP service.
//!
//! The numerical core (colors, colormaps, test functions, noise and the
//! neighbor-difference evaluation) lives in [`cmtest_core`] and is
//! re-exported as [`core`].

pub use cmtest_core as core;

pub mod catalog;
pub mod cli;
pub mod error;
pub mod formats;
pub mod fsutil;
pub mod generate;
pub mod report;
pub mod service;

pub use error::{Error, Result};
