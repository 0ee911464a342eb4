//! Building blocks of the `cusp-strata` command-line tool.

pub mod cache;
pub mod diagram;
pub mod parse;
pub mod sweep;
