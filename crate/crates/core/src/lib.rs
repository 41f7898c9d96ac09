pub mod error;
pub mod exact;
pub mod genfun;
pub mod indices;
pub mod qseries;
pub mod suite;

pub use error::{Error, Result};
