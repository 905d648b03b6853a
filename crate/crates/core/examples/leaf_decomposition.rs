//! Decompose a Poisson structure along a symplectic leaf and follow the
//! Moser path to its first-order model.

use leafnorm::models::sphere_example;
use leafnorm::vorobjev::{
    assemble, decompose, first_jet_model, gamma_dot_1, leaf_check, linearization_identity, moser_path,
    structure_equations,
};

fn main() -> leafnorm::Result<()> {
    let pi = sphere_example(true);
    println!("pi      = {pi}");

    let g = decompose(&pi)?;
    println!("v       = {}", g.v_part());
    println!("Gamma   = {}", g.conn_part());
    println!("F       = {}", g.f_part());
    assert_eq!(assemble(&g)?, pi);
    println!("structure equations vanish: {}", structure_equations(&g)?.all_zero());

    let leaf = leaf_check(&g)?;
    println!("leaf: {} with omega_S = {}", leaf.passed, leaf.omega_s);
    println!("first jet = {}", first_jet_model(&g)?);

    let path = moser_path(&g)?;
    println!("gamma_t F = {}", path.gamma_t.f_part());
    println!("Dirac for all t: {}", path.is_dirac_path()?);
    println!("gamma_dot_1 = {}", gamma_dot_1(&g)?);
    let id = linearization_identity(&pi)?;
    println!("cocycle   = {}", id.cocycle.value);
    println!("identity holds: {}", id.holds());
    Ok(())
}
