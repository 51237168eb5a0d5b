//! Library surface of the `lfvo` command-line tool: problem-file schema,
//! bundled example instances, report rendering, and the subcommand
//! implementations. The binary in `main.rs` is a thin argument-parsing
//! wrapper over [`commands`].

pub mod commands;
pub mod fixtures;
pub mod problem_file;
pub mod rational_text;
pub mod report;
