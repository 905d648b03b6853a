use super::horizontal::{decompose, splitting};
use crate::error::Result;
use crate::multivector::{schouten, Multivector};
use crate::omega::{curvature, ltimes_bracket, DiracElement, MixedElement};
use crate::symbolic::Ctx;

/// The four components of `[gamma, gamma]`, up to the factors 1, 2, 2, 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureResiduals {
    /// `[theta^v, theta^v]`, bidegree (0,3).
    pub vertical_jacobi: MixedElement,
    /// `[Gamma, theta^v]`, bidegree (1,2).
    pub parallel: MixedElement,
    /// `R_Gamma + [theta^v, F]`, bidegree (2,1).
    pub curvature: MixedElement,
    /// `[Gamma, F]`, bidegree (3,0).
    pub closed: MixedElement,
}

impl StructureResiduals {
    pub fn all_zero(&self) -> bool {
        self.vertical_jacobi.is_zero() && self.parallel.is_zero() && self.curvature.is_zero() && self.closed.is_zero()
    }

    pub fn as_array(&self) -> [&MixedElement; 4] {
        [&self.vertical_jacobi, &self.parallel, &self.curvature, &self.closed]
    }
}

pub fn structure_equations(g: &DiracElement) -> Result<StructureResiduals> {
    let (v, conn, f) = (g.v_part(), g.conn_part(), g.f_part());
    Ok(StructureResiduals {
        vertical_jacobi: ltimes_bracket(v, v)?,
        parallel: ltimes_bracket(conn, v)?,
        curvature: curvature(conn)?.add(&ltimes_bracket(v, f)?),
        closed: ltimes_bracket(conn, f)?,
    })
}

/// Images of the coordinate vector fields under `f = (-F^#, id)`.
fn tau_images(ctx: &Ctx, g: &DiracElement, n: &crate::symbolic::MatrixRF) -> Vec<MixedElement> {
    let (p, q) = (ctx.p(), ctx.q());
    let f = super::horizontal::f_matrix(g);
    let mut out = Vec::with_capacity(p + q);
    for i in 0..p {
        let mut e = MixedElement::zero(ctx);
        for l in 0..p {
            e = e.sub(&MixedElement::dx(ctx, &[l]).scale(f.get(i, l)));
        }
        for a in 0..q {
            e = e.sub(&MixedElement::d_fiber(ctx, a).scale(n.get(i, a)));
        }
        out.push(e);
    }
    for a in 0..q {
        out.push(MixedElement::d_fiber(ctx, a));
    }
    out
}

fn extend(u: &Multivector, images: &[MixedElement]) -> Result<MixedElement> {
    let ctx = u.ctx();
    let mut out = MixedElement::zero(ctx);
    for (b, c) in u.terms() {
        let mut t = MixedElement::scalar(c.clone());
        for idx in b.indices() {
            t = t.wedge(&images[idx])?;
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// `tau_theta`: wedge extension of `(-F^#, id)` from multivectors to forms
/// with values in vertical multivectors.
pub fn tau(theta: &Multivector, u: &Multivector) -> Result<MixedElement> {
    let s = splitting(theta)?;
    let g = decompose(theta)?;
    extend(u, &tau_images(theta.ctx(), &g, &s.n))
}

/// Inverse of [`tau`]: `dx^m -> -sum_k A_mk hor(d/dx^k)`, `d/dy^a -> d/dy^a`.
pub fn tau_inverse(theta: &Multivector, w: &MixedElement) -> Result<Multivector> {
    let s = splitting(theta)?;
    let ctx = theta.ctx();
    let (p, q) = (ctx.p(), ctx.q());
    let hor: Vec<Multivector> = (0..p)
        .map(|k| {
            (0..q).fold(Multivector::basis(ctx, &[k]), |acc, a| {
                acc.add(&Multivector::basis(ctx, &[p + a]).scale(s.n.get(k, a)))
            })
        })
        .collect();
    let dx_img: Vec<Multivector> = (0..p)
        .map(|m| (0..p).fold(Multivector::zero(ctx), |acc, k| acc.sub(&hor[k].scale(s.h.a.get(m, k)))))
        .collect();
    let mut out = Multivector::zero(ctx);
    for (k, c) in w.terms() {
        if !k.j.is_empty() {
            return Err(crate::Error::InvalidElement("tau inverse needs J = {}".into()));
        }
        let mut t = Multivector::scalar(c.clone());
        for m in k.i.indices() {
            t = t.wedge(&dx_img[m]);
        }
        for a in k.k.indices() {
            t = t.wedge(&Multivector::basis(ctx, &[p + a]));
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// `tau([theta, u]) - [gamma, tau(u)]`.
pub fn chain_map_residual(theta: &Multivector, u: &Multivector) -> Result<MixedElement> {
    let g = decompose(theta)?.to_mixed();
    let lhs = tau(theta, &schouten(theta, u)?)?;
    let rhs = ltimes_bracket(&g, &tau(theta, u)?)?;
    Ok(lhs.sub(&rhs))
}
