//! Driver for the `symshare` binary: configuration, figure data, parameter
//! sweeps, intensity optimization and oracle verification, all emitted as
//! CSV.

// `!(a < b)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod figures;
pub mod table;
pub mod verify;

pub use commands::run;
pub use config::{Command, ConfigOverrides, FigureId, RunConfig};
pub use error::{CliError, Status};
pub use table::Table;
