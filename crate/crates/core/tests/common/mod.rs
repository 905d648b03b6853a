#![allow(dead_code)]

use leafnorm::multivector::{Alternating, Basis, Blade, Multivector};
use leafnorm::symbolic::{ChartContext, Ctx, Monomial, Poly, RatFunc, Q};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn ctx(base: &[&str], fiber: &[&str]) -> Ctx {
    ChartContext::new(base, fiber, &[] as &[&str]).unwrap()
}

pub fn rf(ctx: &Ctx, name: &str) -> RatFunc {
    RatFunc::var_named(ctx, name).unwrap()
}

pub fn int(ctx: &Ctx, n: i64) -> RatFunc {
    RatFunc::integer(ctx, n)
}

/// Random polynomial in the coordinates (not params) of total degree <= deg.
pub fn rand_poly(r: &mut impl Rng, ctx: &Ctx, deg: u32, nterms: usize) -> Poly {
    let vars: Vec<usize> = (0..ctx.dim()).map(|c| ctx.coord_var(c)).collect();
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let mut exps = vec![0u16; ctx.nvars()];
        let d = r.gen_range(0..=deg);
        for _ in 0..d {
            exps[vars[r.gen_range(0..vars.len())]] += 1;
        }
        let c = r.gen_range(-3i64..=3);
        if c != 0 {
            terms.push((Monomial::from_exps(&exps), Q::from_integer(c.into())));
        }
    }
    Poly::from_terms(ctx, terms)
}

/// Random polynomial in the listed variables only.
pub fn rand_poly_in(r: &mut impl Rng, ctx: &Ctx, vars: &[usize], deg: u32, nterms: usize) -> Poly {
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let mut exps = vec![0u16; ctx.nvars()];
        let d = if vars.is_empty() { 0 } else { r.gen_range(0..=deg) };
        for _ in 0..d {
            exps[vars[r.gen_range(0..vars.len())]] += 1;
        }
        let c = r.gen_range(-3i64..=3);
        if c != 0 {
            terms.push((Monomial::from_exps(&exps), Q::from_integer(c.into())));
        }
    }
    Poly::from_terms(ctx, terms)
}

pub fn rand_rf(r: &mut impl Rng, ctx: &Ctx, deg: u32) -> RatFunc {
    RatFunc::from_poly(rand_poly(r, ctx, deg, 3))
}

/// Random nonzero-denominator rational function with a denominator 1 + (..)^2-ish.
pub fn rand_fraction(r: &mut impl Rng, ctx: &Ctx, deg: u32) -> RatFunc {
    let n = rand_poly(r, ctx, deg, 3);
    let s = rand_poly(r, ctx, 1, 2);
    let d = Poly::one(ctx).add(&s.mul(&s));
    RatFunc::new(n, d).unwrap()
}

/// Random homogeneous element of degree `k` with polynomial coefficients.
pub fn rand_alt<B: Basis>(r: &mut impl Rng, ctx: &Ctx, k: usize, deg: u32, nterms: usize) -> Alternating<B> {
    let n = ctx.dim();
    let mut out = Alternating::<B>::zero(ctx);
    if k > n {
        return out;
    }
    for _ in 0..nterms {
        let mut idx: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            idx.swap(i, r.gen_range(0..=i));
        }
        let b = Blade::from_indices(&idx[..k]);
        out.add_term(b, &rand_rf(r, ctx, deg));
    }
    out
}

pub fn rand_mv(r: &mut impl Rng, ctx: &Ctx, k: usize, deg: u32) -> Multivector {
    rand_alt(r, ctx, k, deg, 3)
}

pub fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

pub fn cases(n: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases: n,
        failure_persistence: None,
        ..Default::default()
    }
}

use leafnorm::omega::{MixedElement, MixedKey};

fn rand_subset(r: &mut impl Rng, n: usize, k: usize) -> Option<Blade> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        idx.swap(i, r.gen_range(0..=i));
    }
    Some(Blade::from_indices(&idx[..k]))
}

/// Random valid element of the tilde space, homogeneous of Lie degree `l`,
/// with coefficient degree <= `deg`. `horizontal` enables `d/dx` terms.
pub fn rand_tilde(r: &mut impl Rng, ctx: &Ctx, l: i64, deg: u32, nterms: usize, horizontal: bool) -> MixedElement {
    let (p, qd) = (ctx.p(), ctx.q());
    let total = (l + 1) as usize;
    let base_vars: Vec<usize> = (0..p).map(|i| ctx.base_var(i)).collect();
    let mut out = MixedElement::zero(ctx);
    for _ in 0..nterms {
        if horizontal && total >= 1 && r.gen_bool(0.4) {
            let Some(i) = rand_subset(r, p, total - 1) else {
                continue;
            };
            let j = Blade::single(r.gen_range(0..p.max(1)));
            if p == 0 {
                continue;
            }
            let c = RatFunc::from_poly(rand_poly_in(r, ctx, &base_vars, deg, 2));
            out.add_term(MixedKey::new(i, j, Blade::EMPTY), &c);
        } else {
            let ni = r.gen_range(0..=total.min(p));
            let Some(i) = rand_subset(r, p, ni) else { continue };
            let Some(k) = rand_subset(r, qd, total - ni) else {
                continue;
            };
            out.add_term(MixedKey::new(i, Blade::EMPTY, k), &rand_rf(r, ctx, deg));
        }
    }
    out
}

/// Linear Poisson structure of so(3) on coordinates `off..off+3`.
pub fn so3_lin(c: &Ctx, off: usize) -> Multivector {
    let y = |a: usize| RatFunc::var(c, c.coord_var(off + a));
    let e = |a: usize, b: usize| Multivector::basis(c, &[off + a, off + b]);
    e(1, 2)
        .scale(&y(0))
        .add(&e(2, 0).scale(&y(1)))
        .add(&e(0, 1).scale(&y(2)))
}

/// Push-forward of `theta` by the shear `z_c -> z_c + h`, where `h` does not
/// depend on `z_c`.
pub fn shear(theta: &Multivector, c: usize, h: &RatFunc) -> Multivector {
    let ctx = theta.ctx();
    let n = ctx.dim();
    let hv = ctx.coord_var(c);
    assert!(!h.uses_var(hv));
    let images: Vec<Multivector> = (0..n)
        .map(|i| {
            Multivector::basis(ctx, &[i]).add(&Multivector::basis(ctx, &[c]).scale(&h.derivative(ctx.coord_var(i))))
        })
        .collect();
    let back = RatFunc::var(ctx, hv).sub(h);
    let mut out = Multivector::zero(ctx);
    for (b, coef) in theta.terms() {
        let t = b
            .indices()
            .fold(Multivector::scalar(coef.clone()), |acc, i| acc.wedge(&images[i]));
        out = out.add(&t);
    }
    out.try_map(|f| f.subst(hv, &back)).unwrap()
}

// Bivector catalogs on p = q = 2.

pub fn y_poly(r: &mut impl Rng, c: &Ctx, deg: u32) -> RatFunc {
    let ys: Vec<usize> = (0..c.q()).map(|a| c.fiber_var(a)).collect();
    let p = rand_poly_in(r, c, &ys, deg, 2);
    RatFunc::from_poly(p.sub(&Poly::constant(c, p.eval(&vec![Default::default(); c.nvars()]))))
}

pub fn x_poly(r: &mut impl Rng, c: &Ctx, deg: u32) -> RatFunc {
    let xs: Vec<usize> = (0..c.p()).map(|i| c.base_var(i)).collect();
    RatFunc::from_poly(rand_poly_in(r, c, &xs, deg, 2))
}

/// Nonzero base function that does not vanish on the whole zero section.
pub fn unit_x_poly(r: &mut impl Rng, c: &Ctx) -> RatFunc {
    let p = x_poly(r, c, 1);
    let k = r.gen_range(1..3);
    p.sub(&RatFunc::constant(
        c,
        p.num().eval(&vec![Default::default(); c.nvars()]),
    ))
    .add(&int(c, k))
}

/// Poisson bivector on p = q = 2 with the zero section as a symplectic leaf:
/// a product structure moved by shears that fix the zero section.
pub fn leaf_poisson(seed: u64) -> Multivector {
    let mut r = rng(seed);
    let c = ctx(&["x1", "x2"], &["y1", "y2"]);
    let a = unit_x_poly(&mut r, &c);
    let b = y_poly(&mut r, &c, 2);
    let theta = Multivector::basis(&c, &[0, 1])
        .scale(&a)
        .add(&Multivector::basis(&c, &[2, 3]).scale(&b));
    let h = rf(&c, "y2").mul(&x_poly(&mut r, &c, 1));
    let theta = shear(&theta, 2, &h);
    let k = y_poly(&mut r, &c, 2);
    shear(&theta, 0, &k)
}

/// Poisson bivector that need not have the zero section as a leaf.
pub fn moved_poisson(seed: u64) -> Multivector {
    let mut r = rng(seed);
    let c = ctx(&["x1", "x2"], &["y1", "y2"]);
    let a = unit_x_poly(&mut r, &c);
    let b = y_poly(&mut r, &c, 1).add(&int(&c, r.gen_range(-2..3)));
    let theta = Multivector::basis(&c, &[0, 1])
        .scale(&a)
        .add(&Multivector::basis(&c, &[2, 3]).scale(&b));
    let theta = shear(&theta, 3, &x_poly(&mut r, &c, 2));
    shear(&theta, 1, &y_poly(&mut r, &c, 1))
}

pub fn random_bivector(seed: u64) -> Multivector {
    let mut r = rng(seed);
    let c = ctx(&["x1", "x2"], &["y1", "y2"]);
    rand_mv(&mut r, &c, 2, 1).add(&Multivector::basis(&c, &[0, 1]))
}
