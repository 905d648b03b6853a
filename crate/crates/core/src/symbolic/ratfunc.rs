use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::context::Ctx;
use super::gcd::{content_in, gcd};
use super::poly::{q_int, Poly, Q};
use crate::error::{Error, Result};

/// Exact rational function in canonical form.
///
/// `num` and `den` are coprime with integer coefficients whose joint content
/// is one, and the leading coefficient of `den` is positive. Equal values
/// therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl RatFunc {
    /// Canonical reduced fraction `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.ctx()));
        }
        if den.is_constant() {
            return Ok(Self::finish(num, den));
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            return Ok(Self::finish(num, den));
        }
        let n = num.div_exact(&g).expect("gcd divides numerator");
        let d = den.div_exact(&g).expect("gcd divides denominator");
        Ok(Self::finish(n, d))
    }

    /// Fixes the scaling of an already coprime pair.
    fn finish(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero(num.ctx());
        }
        let l = num.coeff_denom_lcm().lcm(&den.coeff_denom_lcm());
        let (num, den) = if l.is_one() {
            (num, den)
        } else {
            let k = Q::from_integer(l);
            (num.scale(&k), den.scale(&k))
        };
        let g = num.coeff_numer_gcd().gcd(&den.coeff_numer_gcd());
        let neg = den.lead().is_some_and(|(_, c)| c.is_negative());
        if g.is_one() && !neg {
            return RatFunc { num, den };
        }
        let mut k = Q::new(BigInt::one(), g);
        if neg {
            k = -k;
        }
        RatFunc {
            num: num.scale(&k),
            den: den.scale(&k),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(p.ctx());
        Self::finish(p, one)
    }

    pub fn zero(ctx: &Ctx) -> Self {
        RatFunc {
            num: Poly::zero(ctx),
            den: Poly::one(ctx),
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        RatFunc {
            num: Poly::one(ctx),
            den: Poly::one(ctx),
        }
    }

    pub fn constant(ctx: &Ctx, c: Q) -> Self {
        Self::from_poly(Poly::constant(ctx, c))
    }

    pub fn integer(ctx: &Ctx, n: i64) -> Self {
        Self::constant(ctx, q_int(n))
    }

    pub fn var(ctx: &Ctx, v: usize) -> Self {
        Self::from_poly(Poly::var(ctx, v))
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Result<Self> {
        Poly::var_named(ctx, name).map(Self::from_poly)
    }

    pub fn ctx(&self) -> &Ctx {
        self.num.ctx()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Q> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// The numerator divided by the (constant) denominator.
    pub fn as_poly(&self) -> Option<Poly> {
        let d = self.den.as_constant()?;
        Some(self.num.scale(&(Q::one() / d)))
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }

    pub fn depends_on_fiber(&self) -> bool {
        let ctx = self.ctx();
        (0..ctx.q()).any(|a| self.uses_var(ctx.fiber_var(a)))
    }

    pub fn den_depends_on_fiber(&self) -> bool {
        let ctx = self.ctx();
        (0..ctx.q()).any(|a| self.den.uses_var(ctx.fiber_var(a)))
    }

    /// True when only params and base variables occur.
    pub fn is_base_only(&self) -> bool {
        !self.depends_on_fiber()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            return Self::new(n, self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_constant() && o.den.is_constant() {
            let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return Self::finish(n, self.den.mul(&o.den));
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return Self::finish(n, self.den.mul(&o.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let n = self.num.mul(&d1).add(&o.num.mul(&b1));
        if n.is_zero() {
            return Self::zero(self.ctx());
        }
        let den = self.den.mul(&d1);
        let g2 = gcd(&n, &g);
        if g2.is_one() {
            Self::finish(n, den)
        } else {
            Self::finish(
                n.div_exact(&g2).expect("gcd divides"),
                den.div_exact(&g2).expect("gcd divides"),
            )
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ctx());
        }
        if self.den.is_constant() && o.den.is_constant() {
            return Self::finish(self.num.mul(&o.num), self.den.mul(&o.den));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let div = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let n = div(&self.num, &g1).mul(&div(&o.num, &g2));
        let d = div(&self.den, &g2).mul(&div(&o.den, &g1));
        Self::finish(n, d)
    }

    pub fn scale(&self, k: &Q) -> RatFunc {
        if k.is_zero() {
            return Self::zero(self.ctx());
        }
        Self::finish(self.num.scale(k), self.den.clone())
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        self.mul(&RatFunc::from_poly(p.clone()))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::finish(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self::finish(base.num.pow(k), base.den.pow(k)))
    }

    /// Exact partial derivative with respect to variable index `v`.
    pub fn derivative(&self, v: usize) -> RatFunc {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return Self::new(dn, self.den.clone()).expect("nonzero denominator");
        }
        // (n' (d/g) - n (d'/g)) / (d (d/g)) with g = gcd(d, d')
        let g = gcd(&self.den, &dd);
        let d_over_g = self.den.div_exact(&g).expect("gcd divides");
        let dd_over_g = dd.div_exact(&g).expect("gcd divides");
        let n = dn.mul(&d_over_g).sub(&self.num.mul(&dd_over_g));
        let den = self.den.mul(&d_over_g);
        Self::new(n, den).expect("nonzero denominator")
    }

    pub fn derivative_named(&self, name: &str) -> Result<RatFunc> {
        let v = self
            .ctx()
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.derivative(v))
    }

    /// Substitutes variable `v` by `value`.
    pub fn subst(&self, v: usize, value: &RatFunc) -> Result<RatFunc> {
        if !self.uses_var(v) {
            return Ok(self.clone());
        }
        let n = subst_poly(&self.num, v, value);
        let d = subst_poly(&self.den, v, value);
        n.checked_div(&d)
    }

    pub fn eval_var(&self, v: usize, value: &Q) -> Result<RatFunc> {
        if !self.uses_var(v) {
            return Ok(self.clone());
        }
        Self::new(self.num.eval_var(v, value), self.den.eval_var(v, value))
    }

    /// Evaluates every variable; fails when the denominator vanishes.
    pub fn eval(&self, point: &[Q]) -> Result<Q> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn embed(&self, target: &Ctx) -> Result<RatFunc> {
        Ok(RatFunc {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
    }

    fn fiber_mask(&self) -> Vec<bool> {
        let ctx = self.ctx();
        (0..ctx.nvars()).map(|v| ctx.is_fiber_var(v)).collect()
    }

    /// `f(x, t*y)`: every fiber variable scaled by `t`.
    pub fn scale_fiber(&self, t: &RatFunc) -> RatFunc {
        let mask = self.fiber_mask();
        let ctx = self.ctx();
        if let Some(tv) = single_var(t) {
            let n = self.num.scale_vars_by_var(&mask, tv);
            let d = self.den.scale_vars_by_var(&mask, tv);
            return Self::new(n, d).expect("nonzero denominator");
        }
        let expand = |p: &Poly| -> RatFunc {
            let mut acc = RatFunc::zero(ctx);
            for (deg, part) in p.parts_by_degree(&mask) {
                let tp = t.pow(deg as i32).expect("nonnegative power");
                acc = acc.add(&RatFunc::from_poly(part).mul(&tp));
            }
            acc
        };
        expand(&self.num)
            .checked_div(&expand(&self.den))
            .expect("scaled denominator is nonzero")
    }

    /// Value on the zero section (all fiber variables set to 0).
    pub fn at_zero_section(&self) -> Result<RatFunc> {
        let ctx = self.ctx();
        let mut n = self.num.clone();
        let mut d = self.den.clone();
        for a in 0..ctx.q() {
            let v = ctx.fiber_var(a);
            n = n.eval_var(v, &Q::zero());
            d = d.eval_var(v, &Q::zero());
        }
        if d.is_zero() {
            return Err(Error::SingularAtZeroSection);
        }
        RatFunc::new(n, d)
    }

    /// Canonical text form; denominators are printed by square-free factors.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

fn single_var(t: &RatFunc) -> Option<usize> {
    if !t.den.is_one() || t.num.len() != 1 {
        return None;
    }
    let (m, c) = &t.num.terms()[0];
    if !c.is_one() || m.degree() != 1 {
        return None;
    }
    m.exps().iter().position(|&e| e == 1)
}

fn subst_poly(p: &Poly, v: usize, value: &RatFunc) -> RatFunc {
    let coeffs = p.coeffs_in(v);
    let mut acc = RatFunc::zero(p.ctx());
    for c in coeffs.iter().rev() {
        acc = acc.mul(value).add(&RatFunc::from_poly(c.clone()));
    }
    acc
}

/// Square-free decomposition `p = c * prod f_i^i` of a nonzero polynomial,
/// returned as the constant and the nonconstant factors by multiplicity.
pub fn square_free(p: &Poly) -> (Q, Vec<(Poly, u32)>) {
    let mut factors = Vec::new();
    square_free_into(&p.primitive(), &mut factors);
    factors.sort_by_key(|(_, e)| *e);
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (f, e) in factors {
        match merged.last_mut() {
            Some((g, m)) if *m == e => *g = g.mul(&f).primitive(),
            _ => merged.push((f, e)),
        }
    }
    let mut prod = Poly::one(p.ctx());
    for (f, e) in &merged {
        prod = prod.mul(&f.pow(*e));
    }
    let c = p
        .div_exact(&prod)
        .and_then(|q| q.as_constant())
        .expect("square-free factors multiply back");
    (c, merged)
}

fn square_free_into(f: &Poly, out: &mut Vec<(Poly, u32)>) {
    if f.is_constant() {
        return;
    }
    let used = f.vars_used();
    let v = used.iter().position(|&u| u).expect("nonconstant");
    let c = content_in(f, v);
    let pp = f.div_exact(&c).expect("content divides");
    yun(&pp, v, out);
    square_free_into(&c, out);
}

fn yun(f: &Poly, v: usize, out: &mut Vec<(Poly, u32)>) {
    let fp = f.derivative(v);
    let a0 = gcd(f, &fp);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let c = fp.div_exact(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative(v));
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = c.sub(&b.derivative(v));
        i += 1;
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        f.write_str("/")?;
        let (c, factors) = square_free(&self.den);
        let mut tokens: Vec<String> = Vec::new();
        if !c.is_one() {
            tokens.push(c.to_string());
        }
        for (p, e) in &factors {
            let body = if p.len() > 1 || (!p.terms()[0].1.is_one() && *e > 1) {
                format!("({p})")
            } else {
                p.to_string()
            };
            if *e > 1 {
                tokens.push(format!("{body}^{e}"));
            } else {
                tokens.push(body);
            }
        }
        if tokens.len() == 1 && !tokens[0].contains('*') {
            f.write_str(&tokens[0])
        } else {
            write!(f, "({})", tokens.join("*"))
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                RatFunc::$m(self, o)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                RatFunc::$m(&self, &o)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                RatFunc::$m(&self, o)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}
