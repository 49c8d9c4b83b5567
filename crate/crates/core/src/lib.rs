pub mod assembler;
pub mod error;
pub mod experiments;
pub mod identifiability;
pub mod model;
pub mod reads;
pub mod repeats;
pub mod rng;

pub use error::{Error, Result};
