//! Experiment orchestration behind the `interaction` command.

pub mod experiment;
pub mod report;
pub mod reproduce;
pub mod source;
