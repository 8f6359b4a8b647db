//! Command implementations behind the `kjdt` binary and the conjecture
//! search harness.

pub mod commands;
pub mod search;
