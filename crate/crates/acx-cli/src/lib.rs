//! Library surface of the CLI crate: the descriptor file format and the
//! report structure, shared between the binary and its integration tests.

pub mod descriptor;
pub mod report;
