pub mod arrangement;
pub mod attach;
pub mod error;
pub mod exactla;
pub mod families;
pub mod liealg;
pub mod poly;
pub mod prehomog;
pub mod records;
pub mod rng;
pub mod triangulation;

pub use error::{Error, Result};
