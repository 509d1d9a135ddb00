//! Model files, checks and reports for the `preord` command.

pub mod census;
pub mod checks;
pub mod commands;
pub mod dump;
pub mod explain;
pub mod model;
pub mod report;
pub mod resolve;

pub use commands::{run_command, Output};
pub use model::{parse_model, print_model, ModelFile, ParseError};
pub use report::{emit_report, exit_code, Format};
