//! Library surface of the command-line tool: file formats and bench
//! suites, shared with the integration tests.

pub mod bench;
pub mod format;
