use super::lie::{linear_poisson_in, LieAlgebraData};
use crate::error::{Error, Result};
use crate::multivector::{DiffForm, Multivector};
use crate::symbolic::{ChartContext, Ctx, RatFunc};

/// Stereographic chart `(u, v)` of the sphere times `so(3)*` with `y1..y3`.
pub fn sphere_context() -> Ctx {
    ChartContext::new(&["u", "v"], &["y1", "y2", "y3"], &[] as &[&str]).expect("fixed names")
}

fn conformal(ctx: &Ctx) -> RatFunc {
    let u = RatFunc::var(ctx, ctx.base_var(0));
    let v = RatFunc::var(ctx, ctx.base_var(1));
    RatFunc::one(ctx).add(&u.mul(&u)).add(&v.mul(&v))
}

/// `r^2 = y1^2 + y2^2 + y3^2`.
pub fn radius_squared(ctx: &Ctx) -> RatFunc {
    (0..ctx.q()).fold(RatFunc::zero(ctx), |acc, a| {
        let y = RatFunc::var(ctx, ctx.fiber_var(a));
        acc.add(&y.mul(&y))
    })
}

/// The area form `4/(1+u^2+v^2)^2 du^dv`, total area `4 pi`.
pub fn sphere_area_form(ctx: &Ctx) -> DiffForm {
    let c = conformal(ctx);
    let coef = RatFunc::integer(ctx, 4).checked_div(&c.mul(&c)).expect("nonzero");
    DiffForm::basis(ctx, &[0, 1]).scale(&coef)
}

/// Inverse bivector of the area form: `(1+u^2+v^2)^2/4 d/du ^ d/dv`.
pub fn sphere_bivector(ctx: &Ctx) -> Multivector {
    let c = conformal(ctx);
    let coef = c.mul(&c).checked_div(&RatFunc::integer(ctx, 4)).expect("nonzero");
    Multivector::basis(ctx, &[0, 1]).scale(&coef)
}

/// `(1 + r^2) pi_S2 + pi_lin` when `deformed`, else `pi_S2 + pi_lin`.
pub fn sphere_example(deformed: bool) -> Multivector {
    sphere_example_in(&sphere_context(), deformed).expect("p = 2, q = 3")
}

/// [`sphere_example`] on any chart with two base and three fiber coordinates.
pub fn sphere_example_in(ctx: &Ctx, deformed: bool) -> Result<Multivector> {
    if ctx.p() != 2 || ctx.q() != 3 {
        return Err(Error::ContextMismatch);
    }
    let mut base = sphere_bivector(ctx);
    if deformed {
        base = base.scale(&RatFunc::one(ctx).add(&radius_squared(ctx)));
    }
    Ok(base.add(&linear_poisson_in(&LieAlgebraData::so3(), ctx)?))
}
