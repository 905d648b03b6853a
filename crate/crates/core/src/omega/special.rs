use super::bracket::ltimes_bracket;
use super::element::MixedElement;
use crate::error::{Error, Result};
use crate::symbolic::{Ctx, RatFunc, Q};

/// `gamma_S = sum_i dx^i (x) d/dx^i`, the element acting as `d` on base forms.
pub fn gamma_s(ctx: &Ctx) -> MixedElement {
    (0..ctx.p()).fold(MixedElement::zero(ctx), |acc, i| {
        acc.add(&MixedElement::horizontal(&crate::multivector::DiffForm::basis(ctx, &[i]), i).expect("base form"))
    })
}

/// Fiber Euler field `sum_a y^a d/dy^a`.
pub fn euler(ctx: &Ctx) -> MixedElement {
    (0..ctx.q()).fold(MixedElement::zero(ctx), |acc, a| {
        acc.add(&MixedElement::d_fiber(ctx, a).scale(&RatFunc::var(ctx, ctx.fiber_var(a))))
    })
}

/// Checks that `g` has bidegree `(1, 1)` and `p_S(g) = gamma_S`.
pub fn check_connection(g: &MixedElement) -> Result<()> {
    g.validate()?;
    if g.bidegrees().iter().any(|b| *b != (1, 1)) || g.p_s() != gamma_s(g.ctx()) {
        return Err(Error::NotAConnection);
    }
    Ok(())
}

/// `R = 1/2 [G, G]`.
pub fn curvature(g: &MixedElement) -> Result<MixedElement> {
    check_connection(g)?;
    let half = RatFunc::constant(g.ctx(), Q::new(1.into(), 2.into()));
    Ok(ltimes_bracket(g, g)?.scale(&half))
}
