#![allow(clippy::needless_range_loop)]
pub mod eigen;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod mps;
pub mod scalar;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::{MpComplex, MpReal};
