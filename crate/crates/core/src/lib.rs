#![allow(clippy::needless_range_loop)]

pub mod dsl;
pub mod error;
pub mod models;
pub mod multivector;
pub mod omega;
pub mod symbolic;
pub mod vorobjev;

pub use error::{Error, Result};
pub use symbolic::{ChartContext, Ctx, MatrixRF, Poly, RatFunc, Q};
