//! Experiment driver for the qjsd library: reproducible CSV-emitting verbs
//! shared between the `qjsd` binary and the test suites.

pub mod config;
pub mod output;
pub mod runner;
