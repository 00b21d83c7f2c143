//! Library surface of the command-line tool: fixture registry, verification
//! suite and output rendering. The binary in `main.rs` is a thin wrapper;
//! integration tests drive these modules directly.

pub mod fixtures;
pub mod output;
pub mod suite;
