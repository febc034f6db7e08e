//! Std companion of `riesz-core`: matrix and spectrum file formats,
//! verification reports, the self-verification harness and the `riesz`
//! command line.

pub mod cli;
pub mod io;
pub mod report;
pub mod verify;

pub use riesz_core;
