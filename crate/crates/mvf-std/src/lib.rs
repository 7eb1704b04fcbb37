//! IO, formats and the command line around `mvf-core`.

pub mod cli;
pub mod dot;
pub mod formats;
pub mod parallel;
pub mod selftest;
