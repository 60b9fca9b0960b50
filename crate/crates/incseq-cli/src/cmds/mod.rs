//! Subcommand argument types and runners, grouped by theme.

pub mod build;
pub mod family_ops;
pub mod graph;
pub mod numeric;
