//! Scenario runner and report formats for `krein-core`.
//!
//! Exit status of the `krein` binary: 0 when every requested check passes,
//! 1 for malformed input, 2 when an oracle comparison fails, 3 for a
//! numerical failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod report;
pub mod run;
pub mod scenario;
pub mod suite;
pub mod sweep;

pub use error::CliError;
pub use run::{build_report, execute, RunOptions};
pub use scenario::{Action, Format, Scenario};
