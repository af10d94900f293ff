//! Library surface of the `ave` binary, exposed so integration tests can
//! drive the benchmark plumbing directly.

pub mod alpha_table;
pub mod bench;
pub mod gen;
pub mod input;
pub mod oracle_check;
pub mod report;
pub mod solve;
pub mod tune;
