//! Command-line front end for `schur-core`.

pub mod app;
pub mod report;
pub mod sweep;
pub mod verify;

pub use app::{run, Outcome};
