//! Exact rational functions, derivatives and matrices over a chart.

use leafnorm::symbolic::{fiber_taylor, ChartContext, MatrixRF, RatFunc};

fn main() -> leafnorm::Result<()> {
    let ctx = ChartContext::new(&["x"], &["y"], &[] as &[&str])?;
    let x = RatFunc::var_named(&ctx, "x")?;
    let y = RatFunc::var_named(&ctx, "y")?;
    let one = RatFunc::one(&ctx);

    let f = one.add(&x.mul(&x)).inv()?;
    println!("f       = {f}");
    println!("df/dx   = {}", f.derivative_named("x")?);

    // Canonical form: common factors cancel, the denominator is monic.
    let g = x
        .mul(&x)
        .sub(&y.mul(&y))
        .checked_div(&x.sub(&y).mul(&RatFunc::integer(&ctx, 2)))?;
    println!("g       = {g}");

    let series = fiber_taylor(&x.checked_div(&one.sub(&y))?, 3)?;
    println!("taylor  = {}", series.truncation());

    let m = MatrixRF::new(&ctx, 2, 2, vec![x.clone(), y.clone(), y.neg(), one.clone()])?;
    println!("det     = {}", m.det()?);
    let inv = m.inverse()?;
    println!("m^-1[0,1] = {}", inv.get(0, 1));
    assert!(m.mul(&inv)?.sub(&MatrixRF::identity(&ctx, 2))?.is_zero());
    Ok(())
}
