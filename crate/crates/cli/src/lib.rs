//! Library surface of the `tricensus` command-line tool; `main` stays a
//! thin flag-parsing wrapper so tests can drive every command directly.

pub mod commands;
pub mod input;
pub mod report;
pub mod verify;
