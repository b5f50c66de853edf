//! Document format and command-line front end for `msk-core`.
//!
//! Exit codes: 0 when every check passes, 1 when a checked property is
//! violated (a witness is printed), 2 for input, format or precondition
//! errors.

pub mod commands;
pub mod document;

pub use commands::{run, Env, Outcome, EXIT_ERROR, EXIT_FAIL, EXIT_PASS};
pub use document::{parse, serialize, DocError, Document, KernelEntry, Validation, FORMAT_VERSION};
