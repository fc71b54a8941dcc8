pub mod artin;
pub mod error;
pub mod extension;
pub mod field;
pub mod groebner;
pub mod instance;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod runner;
pub mod signature;

pub use error::{Error, Result};
