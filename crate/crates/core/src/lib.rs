pub mod cli;
pub mod colored;
pub mod cone;
pub mod diophantine;
pub mod error;
pub mod helly;
pub mod numerical;
pub mod semigroup;
pub mod vector;

pub use error::{Error, Result};
pub use vector::IntVector;
