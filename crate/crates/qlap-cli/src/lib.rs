//! Report payloads of the `qlap` binary, exposed for integration tests
//! and downstream tooling that consumes the JSON output.

pub mod report;
