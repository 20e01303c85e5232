//! File formats, configuration, reports, parallel drivers and the command
//! line around [`netform_core`].

pub mod cli;
pub mod config;
mod error;
pub mod io;
pub mod parallel;
pub mod report;

pub use error::{Error, Result};
