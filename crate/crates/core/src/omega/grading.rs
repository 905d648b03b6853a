use super::element::MixedElement;
use crate::error::{Error, Result};
use crate::symbolic::context::check_ctx;
use crate::symbolic::{fiber_taylor, RatFunc};

/// `phi_t`: each term `a(x, y)` becomes `t^{|J|-1} a(x, t y)`.
pub fn dilation(u: &MixedElement, t: &RatFunc) -> Result<MixedElement> {
    check_ctx(u.ctx(), t.ctx())?;
    if t.is_zero() {
        return Err(Error::ZeroParameter);
    }
    u.try_map(|k, c| Ok(c.scale_fiber(t).mul(&t.pow(k.j.len() as i32 - 1)?)))
}

/// Moves `u` into a context with a fresh formal parameter and returns that
/// parameter.
pub fn with_formal_parameter(u: &MixedElement, stem: &str) -> Result<(MixedElement, RatFunc)> {
    let ctx = u.ctx().with_param(&u.ctx().fresh_name(stem))?;
    let t = RatFunc::var(&ctx, ctx.n_params() - 1);
    Ok((u.embed(&ctx)?, t))
}

/// `phi_t(u)` with `t` a fresh formal parameter.
pub fn dilation_formal(u: &MixedElement) -> Result<(MixedElement, RatFunc)> {
    let (v, t) = with_formal_parameter(u, "t")?;
    Ok((dilation(&v, &t)?, t))
}

/// `d^n_S(u)`: per term, the fiber-homogeneous part of degree `n - |J|`.
pub fn ds_n(u: &MixedElement, n: usize) -> Result<MixedElement> {
    u.try_map(|k, c| match n.checked_sub(k.j.len()) {
        Some(m) => Ok(fiber_taylor(c, m)?.component(m)),
        None => Ok(RatFunc::zero(u.ctx())),
    })
}

/// `j^n_S(u) = sum_{k <= n} d^k_S(u)`.
pub fn jet_n(u: &MixedElement, n: usize) -> Result<MixedElement> {
    u.try_map(|k, c| match n.checked_sub(k.j.len()) {
        Some(m) => Ok(fiber_taylor(c, m)?.truncation()),
        None => Ok(RatFunc::zero(u.ctx())),
    })
}

fn check_fiber_polynomial(u: &MixedElement) -> Result<()> {
    if u.terms().values().any(RatFunc::den_depends_on_fiber) {
        Err(Error::NotFiberPolynomial)
    } else {
        Ok(())
    }
}

/// Projection onto `gr_l`.
pub fn gr_project(u: &MixedElement, l: usize) -> Result<MixedElement> {
    check_fiber_polynomial(u)?;
    ds_n(u, l)
}

pub fn is_homogeneous(u: &MixedElement, l: usize) -> Result<bool> {
    Ok(gr_project(u, l)? == *u)
}

/// The `l` with `u` in `gr_l`, if `u` is nonzero and homogeneous.
pub fn grading(u: &MixedElement) -> Result<Option<usize>> {
    check_fiber_polynomial(u)?;
    let mut found = None;
    for (k, c) in u.terms() {
        let mask: Vec<bool> = (0..u.ctx().nvars()).map(|v| u.ctx().is_fiber_var(v)).collect();
        let parts = c.num().parts_by_degree(&mask);
        if parts.len() != 1 {
            return Ok(None);
        }
        let l = *parts.keys().next().expect("nonempty") as usize + k.j.len();
        if found.is_some_and(|f| f != l) {
            return Ok(None);
        }
        found = Some(l);
    }
    Ok(found)
}
