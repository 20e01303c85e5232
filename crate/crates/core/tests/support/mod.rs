//! Checks shared between the test suites and the acceptance run.
#![allow(dead_code)]

pub mod oracle;
pub mod props;
