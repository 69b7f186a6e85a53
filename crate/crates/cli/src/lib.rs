//! Command-line front end: parsing, output formats and the verification
//! suite.

pub mod commands;
pub mod constants;
pub mod kparse;
pub mod output;
pub mod samples;
pub mod suite;
