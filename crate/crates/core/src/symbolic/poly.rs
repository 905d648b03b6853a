use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::context::{same_ctx, Ctx};
use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Q = BigRational;

pub(crate) fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exponent vector over all context variables.
///
/// The derived order compares total degree first and then exponents
/// lexicographically, which is graded-lex with the first variable most
/// significant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn var(nvars: usize, v: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.exps[v] = e;
        m.deg = e as u32;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exp(&self, v: usize) -> u16 {
        self.exps[v]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + o.deg,
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if o.deg > self.deg {
            return None;
        }
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&o.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial {
            deg: self.deg - o.deg,
            exps,
        })
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 8]> = self.exps.iter().zip(&o.exps).map(|(a, b)| *a.min(b)).collect();
        Monomial::from_exps(&exps)
    }

    pub fn with_exp(&self, v: usize, e: u16) -> Monomial {
        let mut m = self.clone();
        m.deg = m.deg - m.exps[v] as u32 + e as u32;
        m.exps[v] = e;
        m
    }

    /// Sum of exponents over the variables selected by `mask`.
    pub fn degree_in(&self, mask: &[bool]) -> u32 {
        self.exps
            .iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|(&e, _)| e as u32)
            .sum()
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted ascending in graded-lex order with no zero
/// coefficients, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: Ctx,
    terms: Vec<(Monomial, Q)>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub fn zero(ctx: &Ctx) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Q::one())
    }

    pub fn constant(ctx: &Ctx, c: Q) -> Self {
        if c.is_zero() {
            return Self::zero(ctx);
        }
        Poly {
            ctx: ctx.clone(),
            terms: vec![(Monomial::one(ctx.nvars()), c)],
        }
    }

    pub fn integer(ctx: &Ctx, n: i64) -> Self {
        Self::constant(ctx, q_int(n))
    }

    /// The variable with index `v`.
    pub fn var(ctx: &Ctx, v: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.nvars(), v, 1), Q::one())
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Result<Self> {
        let v = ctx
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ctx, v))
    }

    pub fn monomial(ctx: &Ctx, m: Monomial, c: Q) -> Self {
        if c.is_zero() {
            return Self::zero(ctx);
        }
        debug_assert_eq!(m.exps.len(), ctx.nvars());
        Poly {
            ctx: ctx.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ctx: &Ctx, mut terms: Vec<(Monomial, Q)>) -> Self {
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly {
            ctx: ctx.clone(),
            terms: out,
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Leading term in graded-lex order.
    pub fn lead(&self) -> Option<(&Monomial, &Q)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.last().map_or(0, |(m, _)| m.deg)
    }

    pub fn degree_in_var(&self, v: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exps[v]).max().unwrap_or(0)
    }

    pub fn vars_used(&self) -> Vec<bool> {
        let mut used = vec![false; self.ctx.nvars()];
        for (m, _) in &self.terms {
            for (u, &e) in used.iter_mut().zip(m.exps.iter()) {
                *u |= e > 0;
            }
        }
        used
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps[v] > 0)
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some((m, _)) => m.clone(),
            None => return Monomial::one(self.ctx.nvars()),
        };
        it.fold(first, |acc, (m, _)| acc.gcd(m))
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c * k)).collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        debug_assert!(same_ctx(&self.ctx, &o.ctx), "context mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        debug_assert!(same_ctx(&self.ctx, &o.ctx), "context mismatch");
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.ctx);
        }
        if o.terms.len() == 1 {
            return self.mul_monomial(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: Vec<(Monomial, Q)> = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                acc.push((ma.mul(mb), ca * cb));
            }
        }
        Poly::from_terms(&self.ctx, acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(&self.ctx));
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm)?, c / dc));
            }
            return Some(Poly {
                ctx: self.ctx.clone(),
                terms,
            });
        }
        let (dm, dc) = d.lead().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((rm, rc)) = r.lead() {
            let m = rm.div(&dm)?;
            let c = rc / &dc;
            r = r.sub(&d.mul_monomial(&m, &c));
            q.push((m, c));
        }
        Some(Poly::from_terms(&self.ctx, q))
    }

    pub fn derivative(&self, v: usize) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps[v];
            if e > 0 {
                terms.push((m.with_exp(v, e - 1), c * q_int(e as i64)));
            }
        }
        Poly::from_terms(&self.ctx, terms)
    }

    /// Coefficients with respect to variable `v`, indexed by its exponent.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let d = self.degree_in_var(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Q)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exps[v] as usize;
            buckets[e].push((m.with_exp(v, 0), c.clone()));
        }
        buckets.into_iter().map(|t| Poly::from_terms(&self.ctx, t)).collect()
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs_in(ctx: &Ctx, v: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, k) in &c.terms {
                terms.push((m.with_exp(v, e as u16), k.clone()));
            }
        }
        Poly::from_terms(ctx, terms)
    }

    /// Replaces variable `v` with the polynomial `value`.
    pub fn subst(&self, v: usize, value: &Poly) -> Poly {
        if !self.uses_var(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        let mut acc = Poly::zero(&self.ctx);
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    pub fn eval_var(&self, v: usize, value: &Q) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exps[v];
            if e == 0 {
                terms.push((m.clone(), c.clone()));
            } else if !value.is_zero() {
                terms.push((m.with_exp(v, 0), c * pow_q(value, e as u32)));
            }
        }
        Poly::from_terms(&self.ctx, terms)
    }

    /// Evaluates every variable except `keep` at `point`, returning dense
    /// univariate coefficients in `keep`.
    pub fn eval_to_univariate(&self, keep: usize, point: &[Q]) -> Vec<Q> {
        let d = self.degree_in_var(keep) as usize;
        let mut out = vec![Q::zero(); d + 1];
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (v, &e) in m.exps.iter().enumerate() {
                if v != keep && e > 0 {
                    val *= pow_q(&point[v], e as u32);
                }
            }
            out[m.exps[keep] as usize] += val;
        }
        out
    }

    /// Evaluates all variables.
    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (v, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    val *= pow_q(&point[v], e as u32);
                }
            }
            acc += val;
        }
        acc
    }

    /// Splits into parts homogeneous in the variables selected by `mask`.
    pub fn parts_by_degree(&self, mask: &[bool]) -> BTreeMap<u32, Poly> {
        let mut buckets: BTreeMap<u32, Vec<(Monomial, Q)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            buckets
                .entry(m.degree_in(mask))
                .or_default()
                .push((m.clone(), c.clone()));
        }
        buckets
            .into_iter()
            .map(|(d, t)| (d, Poly::from_terms(&self.ctx, t)))
            .collect()
    }

    /// Multiplies each monomial by `t^(degree in mask)`, with `t` a variable.
    pub fn scale_vars_by_var(&self, mask: &[bool], t: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let d = m.degree_in(mask) as u16;
                (m.with_exp(t, m.exps[t] + d), c.clone())
            })
            .collect();
        Poly::from_terms(&self.ctx, terms)
    }

    /// Re-expresses the polynomial over another context by variable name.
    pub fn embed(&self, target: &Ctx) -> Result<Poly> {
        if same_ctx(&self.ctx, target) {
            return Ok(self.clone());
        }
        let n = target.nvars();
        let mut map = Vec::with_capacity(self.ctx.nvars());
        for v in 0..self.ctx.nvars() {
            map.push(target.var_index(self.ctx.var_name(v)));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps: SmallVec<[u16; 8]> = SmallVec::from_elem(0, n);
            for (v, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    let w = map[v].ok_or_else(|| Error::UnknownVariable(self.ctx.var_name(v).to_string()))?;
                    exps[w] = e;
                }
            }
            terms.push((Monomial::from_exps(&exps), c.clone()));
        }
        Ok(Poly::from_terms(target, terms))
    }

    /// Least common multiple of coefficient denominators.
    pub(crate) fn coeff_denom_lcm(&self) -> BigInt {
        self.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// Gcd of coefficient numerators (assumes integral coefficients).
    pub(crate) fn coeff_numer_gcd(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()))
    }

    /// Integral primitive associate with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.coeff_denom_lcm();
        let scaled = self.scale(&Q::from_integer(l));
        let g = scaled.coeff_numer_gcd();
        let mut k = Q::new(BigInt::one(), g);
        if scaled.lead().is_some_and(|(_, c)| c.is_negative()) {
            k = -k;
        }
        scaled.scale(&k)
    }

    pub(crate) fn fmt_with(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx > 0 {
                f.write_str(if neg { "-" } else { "+" })?;
            } else if neg {
                f.write_str("-")?;
            }
            let a = c.abs();
            let mut wrote = false;
            if !a.is_one() || m.is_one() {
                write!(f, "{}", a.numer())?;
                if !a.denom().is_one() {
                    write!(f, "/{}", a.denom())?;
                }
                wrote = true;
            }
            for (v, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    f.write_str("*")?;
                }
                f.write_str(self.ctx.var_name(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.fmt_with(&mut s)?;
        f.write_str(&s)
    }
}

pub(crate) fn pow_q(x: &Q, e: u32) -> Q {
    num_traits::pow::pow(x.clone(), e as usize)
}
