pub mod error;
pub mod algebra;
pub mod azumaya;
pub mod linalg;
pub mod tencat;
pub mod scalars;
pub mod symplectic;
pub mod splitcat;

pub use error::{Error, Result};
