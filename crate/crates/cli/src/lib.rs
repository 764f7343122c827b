//! Corpus formats, exhaustive enumeration, the theorem-verification harness
//! and the report builders behind the `hamconn` command.

pub mod commands;
pub mod enumerate;
pub mod formats;
pub mod harness;
