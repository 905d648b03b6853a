//! The bracket on the tilde space, computed term by term.
//!
//! Operands split into `J = {}` terms `a dx^I (x) d/dy^K` (vertical part,
//! grouped by `(I, |K|)` into vertical multivectors) and terms
//! `a(x) dx^I (x) d/dx^j`. The three pairings are:
//!
//! * vertical/vertical: `[f (x) X, g (x) Y] = (-1)^{|g|(|X|-1)} f ^ g (x) [X, Y]`
//! * horizontal/vertical: `[a (x) d_j, w (x) Y] = L_{a (x) d_j}(w) (x) Y + a ^ w (x) [d_j, Y]`
//! * horizontal/horizontal: the Frolicher-Nijenhuis bracket
//!   `L_u(b) (x) d_j - (-1)^{rs} L_v(a) (x) d_i`,
//!
//! with `L_{a (x) X}(w) = a ^ L_X w + (-1)^{|a|} da ^ i_X w`.

use std::collections::BTreeMap;

use super::element::{MixedElement, MixedKey};
use crate::error::Result;
use crate::multivector::{exterior_derivative, interior, partial, schouten, Blade, DiffForm, Multivector};
use crate::symbolic::context::{check_ctx, Ctx};
use crate::symbolic::RatFunc;

struct Split {
    vertical: BTreeMap<(Blade, usize), Multivector>,
    horizontal: Vec<(Blade, usize, RatFunc)>,
}

fn split(u: &MixedElement) -> Split {
    let ctx = u.ctx();
    let p = ctx.p();
    let mut vertical: BTreeMap<(Blade, usize), Multivector> = BTreeMap::new();
    let mut horizontal = Vec::new();
    for (k, c) in u.terms() {
        if k.j.is_empty() {
            vertical
                .entry((k.i, k.k.len()))
                .or_insert_with(|| Multivector::zero(ctx))
                .add_term(Blade(k.k.0 << p), c);
        } else {
            horizontal.push((k.i, k.j.indices().next().expect("nonempty"), c.clone()));
        }
    }
    Split { vertical, horizontal }
}

fn neg_if(odd: bool, c: RatFunc) -> RatFunc {
    if odd {
        c.neg()
    } else {
        c
    }
}

/// `w (x) Y` accumulated into `out`, with `w` a base form and `Y` vertical.
fn add_tensor(out: &mut MixedElement, w: &DiffForm, y: &Multivector, odd: bool) {
    let p = out.ctx().p();
    for (wi, wc) in w.terms() {
        for (yb, yc) in y.terms() {
            out.add_term(
                MixedKey::new(*wi, Blade::EMPTY, Blade(yb.0 >> p)),
                &neg_if(odd, wc.mul(yc)),
            );
        }
    }
}

fn add_horizontal(out: &mut MixedElement, w: &DiffForm, j: usize, odd: bool) {
    for (wi, wc) in w.terms() {
        out.add_term(
            MixedKey::new(*wi, Blade::single(j), Blade::EMPTY),
            &neg_if(odd, wc.clone()),
        );
    }
}

fn form(ctx: &Ctx, i: Blade, c: &RatFunc) -> DiffForm {
    DiffForm::from_terms(ctx, [(i, c.clone())])
}

fn d_coord(ctx: &Ctx, j: usize) -> Multivector {
    Multivector::basis(ctx, &[j])
}

/// `L_{a (x) d_j}(w) = a ^ d_j(w) + (-1)^{|a|} da ^ i_{d_j} w`.
fn lie_vv(ctx: &Ctx, a: &DiffForm, r: usize, j: usize, w: &DiffForm) -> DiffForm {
    let t1 = a.wedge(&partial(w, j));
    let iw = interior(&d_coord(ctx, j), w).expect("degree one");
    let t2 = exterior_derivative(a).wedge(&iw);
    if r % 2 == 1 {
        t1.sub(&t2)
    } else {
        t1.add(&t2)
    }
}

fn bracket_vertical(
    out: &mut MixedElement,
    (i1, d1): (Blade, usize),
    x: &Multivector,
    (i2, _): (Blade, usize),
    y: &Multivector,
) -> Result<()> {
    let Some(s) = i1.wedge_sign(i2) else { return Ok(()) };
    let odd = (s < 0) != (i2.len() * (d1 + 1) % 2 == 1);
    let xy = schouten(x, y)?;
    let p = out.ctx().p();
    let i = i1.union(i2);
    for (b, c) in xy.terms() {
        out.add_term(MixedKey::new(i, Blade::EMPTY, Blade(b.0 >> p)), &neg_if(odd, c.clone()));
    }
    Ok(())
}

/// `[a dx^I1 (x) d_j, dx^I2 (x) Y]`.
fn bracket_hv(out: &mut MixedElement, (i1, j, a): &(Blade, usize, RatFunc), i2: Blade, y: &Multivector) {
    let ctx = out.ctx().clone();
    let alpha = form(&ctx, *i1, a);
    let w = form(&ctx, i2, &RatFunc::one(&ctx));
    let r = i1.len();
    // L_X w vanishes for constant w; only the insertion term survives.
    let iw = interior(&d_coord(&ctx, *j), &w).expect("degree one");
    let t1 = exterior_derivative(&alpha).wedge(&iw);
    add_tensor(out, &t1, y, r % 2 == 1);
    let dy = partial(y, *j);
    if !dy.is_zero() {
        add_tensor(out, &alpha.wedge(&w), &dy, false);
    }
}

fn bracket_hh(out: &mut MixedElement, (i1, i, a): &(Blade, usize, RatFunc), (i2, j, b): &(Blade, usize, RatFunc)) {
    let ctx = out.ctx().clone();
    let alpha = form(&ctx, *i1, a);
    let beta = form(&ctx, *i2, b);
    let (r, s) = (i1.len(), i2.len());
    let lu = lie_vv(&ctx, &alpha, r, *i, &beta);
    let lv = lie_vv(&ctx, &beta, s, *j, &alpha);
    add_horizontal(out, &lu, *j, false);
    add_horizontal(out, &lv, *i, r * s % 2 == 0);
}

/// The bracket `[u, v]` on the tilde space.
pub fn ltimes_bracket(u: &MixedElement, v: &MixedElement) -> Result<MixedElement> {
    check_ctx(u.ctx(), v.ctx())?;
    u.validate()?;
    v.validate()?;
    let su = split(u);
    let sv = split(v);
    let mut out = MixedElement::zero(u.ctx());
    for (ku, x) in &su.vertical {
        for (kv, y) in &sv.vertical {
            bracket_vertical(&mut out, *ku, x, *kv, y)?;
        }
    }
    for h in &su.horizontal {
        for ((i2, _), y) in &sv.vertical {
            bracket_hv(&mut out, h, *i2, y);
        }
        for h2 in &sv.horizontal {
            bracket_hh(&mut out, h, h2);
        }
    }
    // [e, h] = -(-1)^{|e||h|} [h, e]
    for h in &sv.horizontal {
        let dh = h.0.len();
        for ((i1, d1), x) in &su.vertical {
            let de = i1.len() + d1 + 1; // parity of |I| + |K| - 1
            let mut t = MixedElement::zero(u.ctx());
            bracket_hv(&mut t, h, *i1, x);
            let flip = de * dh % 2 == 0;
            out = if flip { out.sub(&t) } else { out.add(&t) };
        }
    }
    Ok(out)
}
