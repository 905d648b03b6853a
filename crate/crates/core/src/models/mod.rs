//! Concrete Poisson structures and the period calculus of leaf families.

mod lie;
mod periods;
mod sphere;

pub use lie::{linear_poisson, linear_poisson_in, product_poisson, LieAlgebraData};
pub use periods::{
    affine_in_params, format_generators, integer_affine_identity, lattice_discreteness, monodromy, ratio_constancy,
    regular_model, sphere_period_model, Discreteness, PeriodModel, RatioCheck, PI,
};
pub use sphere::{
    radius_squared, sphere_area_form, sphere_bivector, sphere_context, sphere_example, sphere_example_in,
};
