//! Synchronization languages of rational relations.

pub mod automata;
pub mod autorel;
pub mod cli;
pub mod definability;
pub mod error;
pub mod oracle;
pub mod resync;
pub mod syncword;
pub mod uniform;

pub use error::{Error, Result};
