//! Reports, diagrams and the corpus runner behind the `mckay-lab` binary.

pub mod diagram;
pub mod json;
pub mod runner;
