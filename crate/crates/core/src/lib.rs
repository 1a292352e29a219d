pub mod distill;
pub mod error;
pub mod qlinalg;
pub mod hs_geometry;
pub mod inseparability;
pub mod qstate;
pub mod rng;

pub use error::{Error, Result};
