//! System files, the convex process of a constrained linear system, reports
//! and the command-line interface.

pub mod cli;
pub mod parse;
pub mod report;
pub mod system;

pub use parse::{emit_system, parse_system, parse_system_str, SystemFile};
pub use report::{emit_report, Format, Report};
pub use system::{example_system, ConstrainedLinearSystem};
