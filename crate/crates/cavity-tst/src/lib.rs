//! Sweep engine, figure presets, CSV output and configuration for the
//! `cavity-tst` command-line tool. All physics lives in `cavity-tst-core`.

pub mod config;
pub mod csv;
mod error;
pub mod plot;
pub mod preset;
pub mod sweep;

pub use error::AppError;
