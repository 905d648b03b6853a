use super::context::Ctx;
use super::poly::{Monomial, Poly};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Fiber Taylor expansion at the zero section.
///
/// `components[k]` is the fiber-homogeneous part of degree `k`; its
/// denominator involves base variables and params only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSeries {
    ctx: Ctx,
    components: Vec<RatFunc>,
}

impl FiberSeries {
    pub fn order(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, k: usize) -> RatFunc {
        self.components
            .get(k)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.ctx))
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.components
    }

    /// The truncated Taylor polynomial as a single rational function.
    pub fn truncation(&self) -> RatFunc {
        self.components
            .iter()
            .fold(RatFunc::zero(&self.ctx), |acc, c| acc.add(c))
    }

    /// Coefficients keyed by fiber exponent vectors (base-rational values).
    pub fn coefficients(&self) -> Vec<(Vec<u16>, RatFunc)> {
        let ctx = &self.ctx;
        let mut out = Vec::new();
        for comp in &self.components {
            let mut groups: std::collections::BTreeMap<Vec<u16>, Vec<(Monomial, _)>> = Default::default();
            for (m, c) in comp.num().terms() {
                let key: Vec<u16> = (0..ctx.q()).map(|a| m.exp(ctx.fiber_var(a))).collect();
                let mut base = m.clone();
                for a in 0..ctx.q() {
                    base = base.with_exp(ctx.fiber_var(a), 0);
                }
                groups.entry(key).or_default().push((base, c.clone()));
            }
            for (key, terms) in groups {
                let coeff = Poly::from_terms(ctx, terms);
                let value = RatFunc::new(coeff, comp.den().clone()).expect("nonzero denominator");
                out.push((key, value));
            }
        }
        out
    }
}

/// Fiber-degree `<= order` Taylor polynomial of `f` at the zero section.
pub fn fiber_taylor(f: &RatFunc, order: usize) -> Result<FiberSeries> {
    let ctx = f.ctx().clone();
    let mask: Vec<bool> = (0..ctx.nvars()).map(|v| ctx.is_fiber_var(v)).collect();
    let nparts = f.num().parts_by_degree(&mask);
    let dparts = f.den().parts_by_degree(&mask);
    let part = |m: &std::collections::BTreeMap<u32, Poly>, k: usize| -> RatFunc {
        m.get(&(k as u32))
            .cloned()
            .map(RatFunc::from_poly)
            .unwrap_or_else(|| RatFunc::zero(&ctx))
    };
    let d0 = part(&dparts, 0);
    if d0.is_zero() {
        return Err(Error::SingularAtZeroSection);
    }
    let d0_inv = d0.inv()?;
    let mut components: Vec<RatFunc> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = part(&nparts, k);
        for j in 1..=k {
            let dj = part(&dparts, j);
            if !dj.is_zero() {
                acc = acc.sub(&dj.mul(&components[k - j]));
            }
        }
        components.push(acc.mul(&d0_inv));
    }
    Ok(FiberSeries { ctx, components })
}
