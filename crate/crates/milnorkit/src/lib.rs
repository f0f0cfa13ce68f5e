//! Command-line front end: load or name an arrangement, run an invariant
//! pipeline, and emit a canonical JSON report.

pub mod commands;
pub mod report;
