//! Command-line front end for the `entwit` library: evaluate conversion
//! witnesses on pairs of states, scan parameter grids to CSV, and run the
//! self-verification suites. The binary lives in `main.rs`; everything it
//! does is exposed here so integration tests can drive the exact code paths
//! in-process.

pub mod commands;
pub mod fmt;
pub mod parse;
pub mod scan;
