//! Command-line front end for the `indres` engine: corpus loading, census
//! runs with a worker pool and result cache, and JSONL reports.

pub mod app;
pub mod cache;
pub mod census;
pub mod corpus;
pub mod report;
pub mod selftest;
