//! Multivector fields and differential forms on a chart, with the Schouten
//! bracket and Cartan calculus.
//!
//! Sign conventions: `[P, Q] = sum_i (P <- d/dxi_i) ^ d_i Q - (-1)^{(a-1)(b-1)} (Q <- d/dxi_i) ^ d_i P`
//! where `<-` is the right derivative by the odd coordinate. With this choice
//! `[X, f] = X(f)`, `[P, f] = -P^#(df)` for bivectors, and
//! `P^#(a)(b) = <P, a ^ b>`.

mod alternating;
pub mod blade;
mod calculus;
mod poisson;

pub(crate) use alternating::{format_term, join_terms};
pub use alternating::{Alternating, Basis, DiffForm, Forms, Multivector, Vectors};
pub use blade::Blade;
pub use calculus::{
    apply_vector_field, contract, differential, exterior_derivative, interior, lie_derivative, pairing, partial,
    schouten, sharp, wedge_sharp,
};
pub use poisson::{cotangent_bracket, hamiltonian, is_poisson, poisson_bracket, PoissonCheck};
