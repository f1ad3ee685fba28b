//! IO, report formats and the command line for `hypmetric-core`.

pub mod cli;
pub mod report;
pub mod spec;
pub mod suite;

pub use report::{emit_report, Format};
pub use spec::{parse_domain, parse_map, parse_point};
pub use suite::{run_suite, RunConfig, Suite};
