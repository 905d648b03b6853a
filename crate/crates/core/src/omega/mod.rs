//! The bigraded algebra of vector-valued forms along the fibers of a trivial
//! bundle chart, its bracket, and the dilation grading.
//!
//! Elements are sums of `a dx^I (x) d/dx^J ^ d/dy^K`. Terms with `J = {}`
//! form the ideal of fiber-vertical elements; the tilde space also allows
//! `a(x) dx^I (x) d/dx^j`. The bracket has Lie degree `|I| + |J| + |K| - 1`.

mod bracket;
mod dirac;
mod element;
mod grading;
mod special;

pub use bracket::ltimes_bracket;
pub use dirac::DiracElement;
pub use element::{MixedElement, MixedKey, Space};
pub use grading::{dilation, dilation_formal, ds_n, gr_project, grading, is_homogeneous, jet_n, with_formal_parameter};
pub use special::{check_connection, curvature, euler, gamma_s};
