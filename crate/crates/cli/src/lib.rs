//! Spec documents, builtins and report generation for the `nambu-forge` binary.

pub mod builtins;
pub mod document;
pub mod explain;
pub mod run;

pub use document::{parse_spec, serialize_spec, SpecDocument, SpecError};
pub use run::{run_checks, CheckReport};
