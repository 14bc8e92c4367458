//! File formats, a parallel driver and the `kmbranch` command line on top of
//! [`kmbranch_core`].

pub mod driver;
pub mod emit;
pub mod error;
pub mod format;

pub use error::CliError;
