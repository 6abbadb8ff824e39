//! Scenario-driven front end: fixture registry, scenario schema, runner and
//! the golden suite.

pub mod fixtures;
pub mod golden;
pub mod runner;
pub mod scenario;
