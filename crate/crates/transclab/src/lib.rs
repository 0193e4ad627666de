//! IO companion to `transclab-core`: JSON/CSV/binary file formats, the
//! worker-invariant parallel runner, and the command-line interface.

pub mod cli;
pub mod formats;
pub mod runner;

/// Schema tag stamped on every machine-readable output.
pub const SCHEMA: &str = "transclab/1";
