//! Singularities of map germs: multiple point spaces, connectivity
//! windows, the image computing spectral sequence and monodromy bounds.

pub mod budget;
pub mod cli;
pub mod connectivity;
pub mod error;
pub mod germs;
pub mod icss;
pub mod linalg;
pub mod monodromy;
pub mod multiple_points;
pub mod poly;

pub use error::{Error, Result};
