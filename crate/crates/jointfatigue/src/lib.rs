//! File formats, reports, the end-to-end pipeline and the CLI behind the
//! `jointfatigue` binary.

pub mod cli;
pub mod config;
pub mod defaults;
pub mod error;
pub mod formats;
pub mod pipeline;
pub mod report;

pub use error::{Error, Result};
