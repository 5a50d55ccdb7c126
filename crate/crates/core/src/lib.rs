pub mod error;
pub mod exactlin;
pub mod endo;
pub mod funmod;
pub mod homology;
pub mod ideals;
pub mod cli;
pub mod instance;
pub mod pathcat;

pub use error::{Error, Result};
