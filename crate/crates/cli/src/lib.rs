pub mod cache;
pub mod cli;
pub mod commands;
pub mod oracle;
pub mod problem;
pub mod report;
pub mod suites;
