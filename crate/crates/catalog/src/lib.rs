//! Catalog of worked examples and the suites that recheck them.

pub mod entries;
pub mod examples;
pub mod harness;
pub mod properties;
pub mod report;
pub mod eight_dim;
pub mod table1;
pub mod table2;
pub mod table3;
pub mod util;

pub use report::{Check, SuiteReport};
