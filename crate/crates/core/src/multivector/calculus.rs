use super::alternating::{Alternating, Basis, DiffForm, Multivector};
use super::blade::Blade;
use crate::error::{Error, Result};
use crate::symbolic::context::check_ctx;
use crate::symbolic::RatFunc;

fn sign_if(odd: bool, c: RatFunc) -> RatFunc {
    if odd {
        c.neg()
    } else {
        c
    }
}

fn expect_degree<B: Basis>(x: &Alternating<B>, k: usize) -> Result<()> {
    match x.degree()? {
        None => Ok(()),
        Some(d) if d == k => Ok(()),
        Some(d) => Err(Error::WrongDegree { expected: k, found: d }),
    }
}

/// Coefficient-wise partial derivative along coordinate `c`.
pub fn partial<B: Basis>(x: &Alternating<B>, c: usize) -> Alternating<B> {
    let v = x.ctx().coord_var(c);
    x.map(|f| f.derivative(v))
}

/// Right derivative by the odd generator of coordinate `i`.
fn right_derivative(x: &Multivector, i: usize) -> Multivector {
    let mut out = Multivector::zero(x.ctx());
    for (b, c) in x.terms() {
        if b.contains(i) {
            let odd = (b.len() - 1 - b.rank_of(i)) % 2 == 1;
            out.add_term(b.without(i), &sign_if(odd, c.clone()));
        }
    }
    out
}

fn touches(x: &Multivector, i: usize) -> bool {
    x.terms().keys().any(|b| b.contains(i))
}

/// Schouten bracket of homogeneous multivector fields, extending the Lie
/// bracket of vector fields with `[X, f] = X(f)`.
pub fn schouten(u: &Multivector, v: &Multivector) -> Result<Multivector> {
    check_ctx(u.ctx(), v.ctx())?;
    let ctx = u.ctx();
    let (Some(a), Some(b)) = (u.degree()?, v.degree()?) else {
        return Ok(Multivector::zero(ctx));
    };
    let mut out = Multivector::zero(ctx);
    let odd = (a + 1) * (b + 1) % 2 == 1;
    for i in 0..ctx.dim() {
        if touches(u, i) {
            out = out.add(&right_derivative(u, i).wedge(&partial(v, i)));
        }
        if touches(v, i) {
            let t = right_derivative(v, i).wedge(&partial(u, i));
            out = if odd { out.add(&t) } else { out.sub(&t) };
        }
    }
    Ok(out)
}

/// `X(f)` for a vector field `X`.
pub fn apply_vector_field(x: &Multivector, f: &RatFunc) -> Result<RatFunc> {
    check_ctx(x.ctx(), f.ctx())?;
    expect_degree(x, 1)?;
    let ctx = x.ctx();
    let mut acc = RatFunc::zero(ctx);
    for (b, c) in x.terms() {
        let i = b.indices().next().expect("degree one");
        let df = f.derivative(ctx.coord_var(i));
        if !df.is_zero() {
            acc = acc.add(&c.mul(&df));
        }
    }
    Ok(acc)
}

pub fn exterior_derivative(w: &DiffForm) -> DiffForm {
    let ctx = w.ctx();
    let mut out = DiffForm::zero(ctx);
    for (b, f) in w.terms() {
        for c in 0..ctx.dim() {
            if b.contains(c) {
                continue;
            }
            let df = f.derivative(ctx.coord_var(c));
            if df.is_zero() {
                continue;
            }
            let s = Blade::single(c).wedge_sign(*b).expect("disjoint");
            out.add_term(b.union(Blade::single(c)), &sign_if(s < 0, df));
        }
    }
    out
}

/// `df` of a function.
pub fn differential(f: &RatFunc) -> DiffForm {
    exterior_derivative(&DiffForm::scalar(f.clone()))
}

/// Contraction of a degree-one element of one kind into the other kind:
/// `i(e_{i_1} ^ .. ^ e_{i_k}) = sum_m (-1)^m x_{i_m} e_{I - i_m}`.
fn contract_raw<A: Basis, B: Basis>(x: &Alternating<A>, y: &Alternating<B>) -> Alternating<B> {
    let mut out = Alternating::<B>::zero(y.ctx());
    for (xb, xc) in x.terms() {
        let i = xb.indices().next().expect("degree one");
        for (b, c) in y.terms() {
            if b.contains(i) {
                let odd = b.rank_of(i) % 2 == 1;
                out.add_term(b.without(i), &sign_if(odd, xc.mul(c)));
            }
        }
    }
    out
}

/// Interior product `i_X w` of a vector field into a form.
pub fn interior(x: &Multivector, w: &DiffForm) -> Result<DiffForm> {
    check_ctx(x.ctx(), w.ctx())?;
    expect_degree(x, 1)?;
    Ok(contract_raw(x, w))
}

/// Contraction `i_a P` of a one-form into a multivector.
pub fn contract(a: &DiffForm, p: &Multivector) -> Result<Multivector> {
    check_ctx(a.ctx(), p.ctx())?;
    expect_degree(a, 1)?;
    Ok(contract_raw(a, p))
}

/// Lie derivative of a form along a vector field.
pub fn lie_derivative(x: &Multivector, w: &DiffForm) -> Result<DiffForm> {
    check_ctx(x.ctx(), w.ctx())?;
    expect_degree(x, 1)?;
    let ctx = x.ctx();
    let dx: Vec<DiffForm> = (0..ctx.dim())
        .map(|i| differential(&x.coeff(Blade::single(i))))
        .collect();
    let mut out = DiffForm::zero(ctx);
    for (b, f) in w.terms() {
        out.add_term(*b, &apply_vector_field(x, f)?);
        for (m, i) in b.indices().enumerate() {
            if dx[i].is_zero() {
                continue;
            }
            let rest = DiffForm::from_terms(ctx, [(b.without(i), sign_if(m % 2 == 1, f.clone()))]);
            out = out.add(&dx[i].wedge(&rest));
        }
    }
    Ok(out)
}

/// `pi^#(a)`, characterized by `pi^#(a)(b) = <pi, a ^ b>`.
pub fn sharp(pi: &Multivector, a: &DiffForm) -> Result<Multivector> {
    expect_degree(pi, 2)?;
    contract(a, pi)
}

/// Full pairing `sum_I P_I w_I`; `<d/dx1 ^ d/dx2, dx1 ^ dx2> = 1`.
pub fn pairing(p: &Multivector, w: &DiffForm) -> Result<RatFunc> {
    check_ctx(p.ctx(), w.ctx())?;
    let mut acc = RatFunc::zero(p.ctx());
    for (b, c) in p.terms() {
        if let Some(d) = w.terms().get(b) {
            acc = acc.add(&c.mul(d));
        }
    }
    Ok(acc)
}

/// Wedge extension of `pi^#` to forms of any degree.
pub fn wedge_sharp(pi: &Multivector, w: &DiffForm) -> Result<Multivector> {
    check_ctx(pi.ctx(), w.ctx())?;
    expect_degree(pi, 2)?;
    let ctx = pi.ctx();
    let images: Vec<Multivector> = (0..ctx.dim())
        .map(|i| sharp(pi, &DiffForm::basis(ctx, &[i])))
        .collect::<Result<_>>()?;
    let mut out = Multivector::zero(ctx);
    for (b, c) in w.terms() {
        let mut t = Multivector::scalar(c.clone());
        for i in b.indices() {
            t = t.wedge(&images[i]);
        }
        out = out.add(&t);
    }
    Ok(out)
}
