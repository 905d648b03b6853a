//! Geometric data of a Poisson structure around a symplectic leaf.
//!
//! A horizontally nondegenerate bivector `theta` on a vector bundle splits as
//! `theta^v + theta^h`. Its horizontal part determines a connection `Gamma`
//! and a horizontal two-form `F`; the triple packs into a Dirac element
//! `gamma = theta^v + Gamma + F`. The map `tau` intertwines the Schouten
//! differential of `theta` with `[gamma, -]`.

mod algebroid;
mod differential;
mod horizontal;
mod leaf;
mod structure;

pub use algebroid::{algebroid_from_jet, AlgebroidData};
pub use differential::{graded_differential, GradedDifferential};
pub use horizontal::{assemble, decompose, is_horizontally_nondegenerate, HorizontalData, Nondegeneracy};
pub use leaf::{
    first_jet_model, gamma_dot_1, leaf_check, linearization_cocycle, linearization_identity, moser_path,
    moser_path_truncated, Cocycle, LeafCheck, LinearizationIdentity, MoserPath,
};
pub use structure::{chain_map_residual, structure_equations, tau, tau_inverse, StructureResiduals};
