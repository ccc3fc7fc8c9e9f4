//! Library side of the `stacky` command-line tool: the JSON wire format, the
//! example gallery, report rendering and family sweeps.

pub mod commands;
pub mod document;
pub mod error;
pub mod gallery;
pub mod report;
pub mod sweep;

pub use document::{StackyFanDocument, WireInt};
pub use error::{CliError, ViolationRecord};
pub use report::ReportDocument;
