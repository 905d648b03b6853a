//! Schouten brackets and the Jacobi test for bivectors.

use leafnorm::models::{linear_poisson, LieAlgebraData};
use leafnorm::multivector::{hamiltonian, is_poisson, poisson_bracket, schouten, Multivector};
use leafnorm::symbolic::{ChartContext, RatFunc};

fn main() -> leafnorm::Result<()> {
    let so3 = linear_poisson(&LieAlgebraData::so3());
    let ctx = so3.ctx().clone();
    println!("pi        = {so3}");
    println!("[pi, pi]  = {}", is_poisson(&so3)?.residual);

    let y = |n: &str| RatFunc::var_named(&ctx, n);
    let casimir = y("y1")?
        .mul(&y("y1")?)
        .add(&y("y2")?.mul(&y("y2")?))
        .add(&y("y3")?.mul(&y("y3")?));
    println!("X_C       = {}", hamiltonian(&so3, &casimir)?);
    println!("{{y1, y2}}  = {}", poisson_bracket(&so3, &y("y1")?, &y("y2")?)?);

    // y1 d/dy1^d/dy2 + y2 d/dy2^d/dy3 fails Jacobi.
    let d = |i: usize, j: usize| Multivector::basis(&ctx, &[i, j]);
    let bad = d(0, 1).scale(&y("y1")?).add(&d(1, 2).scale(&y("y2")?));
    println!("[t, t]    = {}", schouten(&bad, &bad)?);

    let plane = ChartContext::new(&["x1", "x2"], &[] as &[&str], &[] as &[&str])?;
    println!(
        "symplectic plane Poisson: {}",
        is_poisson(&Multivector::basis(&plane, &[0, 1]))?.is_poisson
    );
    Ok(())
}
