pub mod binomial;
pub mod bounds;
pub mod cli;
pub mod engine;
pub mod error;
pub mod multirun;
pub mod parser;
