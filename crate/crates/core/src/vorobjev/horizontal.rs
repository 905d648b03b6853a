use crate::error::{Error, Result};
use crate::multivector::Blade;
use crate::multivector::Multivector;
use crate::omega::{gamma_s, DiracElement, MixedElement, MixedKey};
use crate::symbolic::{Ctx, MatrixRF, RatFunc};

/// Blocks of a bivector `theta`: `A_ij = theta(dx^i, dx^j)`,
/// `B_ia = theta(dx^i, dy^a)`, `C_ab = theta(dy^a, dy^b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorizontalData {
    pub a: MatrixRF,
    pub b: MatrixRF,
    pub c: MatrixRF,
}

impl HorizontalData {
    pub fn from_bivector(theta: &Multivector) -> Result<Self> {
        if let Some(d) = theta.degree()? {
            if d != 2 {
                return Err(Error::WrongDegree { expected: 2, found: d });
            }
        }
        let ctx = theta.ctx();
        let p = ctx.p();
        let q = ctx.q();
        Ok(HorizontalData {
            a: MatrixRF::from_fn(ctx, p, p, |i, j| theta.component(&[i, j])),
            b: MatrixRF::from_fn(ctx, p, q, |i, a| theta.component(&[i, p + a])),
            c: MatrixRF::from_fn(ctx, q, q, |a, b| theta.component(&[p + a, p + b])),
        })
    }

    pub fn to_bivector(&self) -> Multivector {
        let ctx = self.a.ctx();
        let p = ctx.p();
        let q = ctx.q();
        let mut out = Multivector::zero(ctx);
        for i in 0..p {
            for j in i + 1..p {
                out.add_term(Blade::from_indices(&[i, j]), self.a.get(i, j));
            }
            for a in 0..q {
                out.add_term(Blade::from_indices(&[i, p + a]), self.b.get(i, a));
            }
        }
        for a in 0..q {
            for b in a + 1..q {
                out.add_term(Blade::from_indices(&[p + a, p + b]), self.c.get(a, b));
            }
        }
        out
    }
}

/// Outcome of the horizontal nondegeneracy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nondegeneracy {
    pub nondegenerate: bool,
    pub det: RatFunc,
    /// Whether `det A` is defined and nonzero on the zero section.
    pub at_zero_section: bool,
}

pub fn is_horizontally_nondegenerate(theta: &Multivector) -> Result<Nondegeneracy> {
    let h = HorizontalData::from_bivector(theta)?;
    let det = h.a.det()?;
    let at_zero_section = det.at_zero_section().is_ok_and(|d| !d.is_zero());
    Ok(Nondegeneracy {
        nondegenerate: !det.is_zero(),
        det,
        at_zero_section,
    })
}

/// `N = A^-1 B`; the horizontal lift is `d/dx^k + N_ka d/dy^a`.
pub(crate) struct Splitting {
    pub h: HorizontalData,
    pub a_inv: MatrixRF,
    pub n: MatrixRF,
}

pub(crate) fn splitting(theta: &Multivector) -> Result<Splitting> {
    let h = HorizontalData::from_bivector(theta)?;
    let a_inv = h.a.inverse().map_err(|_| Error::NotHorizontallyNondegenerate)?;
    let n = a_inv.mul(&h.b)?;
    Ok(Splitting { h, a_inv, n })
}

fn two_form(m: &MatrixRF) -> MixedElement {
    let ctx = m.ctx();
    let mut out = MixedElement::zero(ctx);
    for i in 0..m.rows() {
        for j in i + 1..m.cols() {
            out.add_term(
                MixedKey::new(Blade::from_indices(&[i, j]), Blade::EMPTY, Blade::EMPTY),
                m.get(i, j),
            );
        }
    }
    out
}

fn vertical_bivector(m: &MatrixRF) -> MixedElement {
    let ctx = m.ctx();
    let mut out = MixedElement::zero(ctx);
    for a in 0..m.rows() {
        for b in a + 1..m.cols() {
            out.add_term(
                MixedKey::new(Blade::EMPTY, Blade::EMPTY, Blade::from_indices(&[a, b])),
                m.get(a, b),
            );
        }
    }
    out
}

fn connection(ctx: &Ctx, n: &MatrixRF) -> MixedElement {
    let mut out = gamma_s(ctx);
    for k in 0..n.rows() {
        for a in 0..n.cols() {
            out.add_term(
                MixedKey::new(Blade::single(k), Blade::EMPTY, Blade::single(a)),
                n.get(k, a),
            );
        }
    }
    out
}

/// `C - N^T A N`: the vertical block in the frame `(hor, d/dy)`.
fn vertical_block(h: &HorizontalData, n: &MatrixRF) -> Result<MatrixRF> {
    h.c.sub(&n.transpose().mul(&h.a)?.mul(n)?)
}

/// `theta -> (theta^v, Gamma, F)` with `F(d/dx^k, d/dx^l) = (A^-1)_kl`.
pub fn decompose(theta: &Multivector) -> Result<DiracElement> {
    let s = splitting(theta)?;
    let ctx = theta.ctx();
    let v = vertical_bivector(&vertical_block(&s.h, &s.n)?);
    DiracElement::new(v, connection(ctx, &s.n), two_form(&s.a_inv))
}

fn matrix_of_two_form(f: &MixedElement) -> MatrixRF {
    let ctx = f.ctx();
    let p = ctx.p();
    let mut m = MatrixRF::zeros(ctx, p, p);
    for (k, c) in f.terms() {
        let ix: Vec<usize> = k.i.indices().collect();
        m.set(ix[0], ix[1], c.clone());
        m.set(ix[1], ix[0], c.neg());
    }
    m
}

/// Inverse of [`decompose`].
pub fn assemble(g: &DiracElement) -> Result<Multivector> {
    let ctx = g.ctx();
    let (p, q) = (ctx.p(), ctx.q());
    let f = matrix_of_two_form(g.f_part());
    let a = f.inverse().map_err(|_| Error::DegenerateFPart)?;
    let mut n = MatrixRF::zeros(ctx, p, q);
    for (k, c) in g.conn_part().vertical_part().terms() {
        n.set(
            k.i.indices().next().expect("one form index"),
            k.k.indices().next().expect("one vector index"),
            c.clone(),
        );
    }
    let mut cv = MatrixRF::zeros(ctx, q, q);
    for (k, c) in g.v_part().terms() {
        let ix: Vec<usize> = k.k.indices().collect();
        cv.set(ix[0], ix[1], c.clone());
        cv.set(ix[1], ix[0], c.neg());
    }
    let b = a.mul(&n)?;
    let c = cv.add(&n.transpose().mul(&a)?.mul(&n)?)?;
    Ok(HorizontalData { a, b, c }.to_bivector())
}

pub(crate) fn f_matrix(g: &DiracElement) -> MatrixRF {
    matrix_of_two_form(g.f_part())
}
