//! Enumeration of small semigroups, a brute-force implication oracle,
//! verification suites and the `semiwork` command line, on top of
//! [`semiwork_core`].

pub mod catalog;
pub mod cli;
pub mod enumeration;
mod error;
pub mod input;
pub mod json;
pub mod oracle;
pub mod report;
pub mod suites;

pub use error::WorkbenchError;
