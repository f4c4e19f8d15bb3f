pub mod analysis;
pub mod canonical;
pub mod cli;
pub mod error;
pub mod examples;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod z4codes;
pub mod z4module;

pub use error::{Error, Result};
