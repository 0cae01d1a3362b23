//! Batch front-end for `chernpolder-core`: TOML-configured sweeps written as
//! CSV, figure data sets and SI conversion for atoms given by wavelength.

pub mod commands;
pub mod config;
pub mod figures;
pub mod output;
pub mod si;

pub use config::{FigureConfig, RunConfig};
pub use figures::Figure;
pub use output::Table;
