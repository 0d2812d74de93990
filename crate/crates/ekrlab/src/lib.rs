pub mod exec;
pub mod instances;
pub mod json;
pub mod table;
pub mod suites;
pub mod cli;
