//! Command-line front end for `homtop-core`: stems tables, JSON documents,
//! parallel oracle runs and the subcommand implementations.

pub mod commands;
pub mod json;
pub mod parallel;
pub mod stems;
