pub mod cli;
pub mod complexes;
pub mod determinantal;
pub mod error;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod pruning;
pub mod ring;

pub use error::{Error, Result};
