//! File formats and command line for `twostep-core`.
//!
//! * [`model_file`]: JSON model files, written atomically.
//! * [`dataset`]: CSV datasets, one sample per row.
//! * [`report`]: gradient-check reports as a table or JSON.
//! * [`trace_dump`]: per-layer forward/backward text dump.
//! * [`cli`]: the `twostep` subcommands.

pub mod cli;
pub mod dataset;
mod error;
pub mod model_file;
pub mod report;
pub mod trace_dump;

pub use error::{Error, Result};
