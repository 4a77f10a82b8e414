//! Suites, reports and golden files behind the `salg` command.

pub mod golden;
pub mod instance;
pub mod report;
pub mod suites;

pub use instance::Instance;
pub use report::{render, Report, Status};
