//! Exact polynomials, rational functions and linear algebra over them.

pub mod context;
pub mod gcd;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod series;

pub use context::{ChartContext, Ctx};
pub use matrix::MatrixRF;
pub use poly::{Monomial, Poly, Q};
pub use ratfunc::RatFunc;
pub use series::{fiber_taylor, FiberSeries};
