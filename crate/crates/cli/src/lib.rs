//! JSON file formats, reports and subcommand implementations for the
//! `gweave` binary.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::{CheckKind, CliError, CommandOutput, WovenMode};
pub use document::{load_gframe, parse_gframe, save_gframe, FormatError, GFrameDocument};
pub use report::ReportDocument;
