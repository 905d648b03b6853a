//! Monodromy of symplectic periods and the obstructions read off from it.

use leafnorm::models::{
    affine_in_params, format_generators, integer_affine_identity, lattice_discreteness, monodromy, ratio_constancy,
    regular_model, sphere_period_model,
};
use leafnorm::symbolic::{ChartContext, RatFunc, Q};

fn main() -> leafnorm::Result<()> {
    let sphere = sphere_period_model();
    let mono = monodromy(&sphere, None)?;
    println!("monodromy        = {}", format_generators(&mono));
    for check in ratio_constancy(&sphere)? {
        let ratio = check.ratio.as_ref().map_or("none".into(), ToString::to_string);
        println!(
            "g{}/g{}            = {ratio} (obstruction: {})",
            check.pair.0 + 1,
            check.pair.1 + 1,
            check.obstruction()
        );
    }
    let at = monodromy(&sphere, Some(&[Q::new(1.into(), 2.into())]))?;
    println!("at r = 1/2       = {}", format_generators(&at));
    let lattice = lattice_discreteness(&at)?;
    println!("rank {} basis {:?}", lattice.rank, lattice.basis);

    let ctx = ChartContext::new::<&str>(&[], &[], &["r"])?;
    let r = RatFunc::var(&ctx, 0);
    let den = RatFunc::one(&ctx).add(&r.mul(&r));
    let solution = integer_affine_identity(&den.inv()?, &[RatFunc::one(&ctx), r.checked_div(&den)?])?;
    println!("1/(1+r^2) = m + n r/(1+r^2): {solution:?}");

    let one = Q::from_integer(1.into());
    let zero = Q::from_integer(0.into());
    let base = [one.clone()];
    let omega = [vec![one.clone(), zero]];
    let affine = regular_model(&base, &omega, None)?;
    let deformed = regular_model(&base, &omega, Some(&[one]))?;
    println!("affine family linearizable: {}", affine_in_params(&affine));
    println!("t1^2 family linearizable:   {}", affine_in_params(&deformed));
    Ok(())
}
