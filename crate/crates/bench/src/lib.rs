//! Edge-list files, result tables and the subcommands of the `kemeny`
//! benchmark binary, built on `kemeny-core`.

pub mod cli;
pub mod commands;
pub mod edgelist;
pub mod source;
pub mod table;
