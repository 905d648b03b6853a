use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use super::blade::{sort_sign, Blade};
use crate::error::{Error, Result};
use crate::symbolic::context::{check_ctx, Ctx};
use crate::symbolic::RatFunc;

/// Which basis the wedge monomials are written in.
pub trait Basis: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    fn symbol(ctx: &Ctx, c: usize) -> String;
}

/// Coordinate vector fields `d/dx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vectors;

/// Coordinate differentials `dx[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forms;

impl Basis for Vectors {
    fn symbol(ctx: &Ctx, c: usize) -> String {
        format!("d/d{}", ctx.coord_name(c))
    }
}

impl Basis for Forms {
    fn symbol(ctx: &Ctx, c: usize) -> String {
        format!("dx[{}]", ctx.coord_name(c))
    }
}

/// Sparse sum of wedge monomials with rational-function coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Alternating<B: Basis> {
    ctx: Ctx,
    terms: BTreeMap<Blade, RatFunc>,
    _basis: PhantomData<B>,
}

/// Multivector field on the chart.
pub type Multivector = Alternating<Vectors>;

/// Differential form on the chart.
pub type DiffForm = Alternating<Forms>;

impl<B: Basis> Alternating<B> {
    pub fn zero(ctx: &Ctx) -> Self {
        Alternating {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
            _basis: PhantomData,
        }
    }

    pub fn from_terms(ctx: &Ctx, terms: impl IntoIterator<Item = (Blade, RatFunc)>) -> Self {
        let mut out = Self::zero(ctx);
        for (b, c) in terms {
            out.add_term(b, &c);
        }
        out
    }

    /// Degree-zero element.
    pub fn scalar(f: RatFunc) -> Self {
        let ctx = f.ctx().clone();
        Self::from_terms(&ctx, [(Blade::EMPTY, f)])
    }

    /// `e_{c_1} ^ ... ^ e_{c_k}` for coordinate indices in any order.
    pub fn basis(ctx: &Ctx, coords: &[usize]) -> Self {
        match sort_sign(coords) {
            Some((b, s)) => Self::from_terms(ctx, [(b, RatFunc::integer(ctx, s as i64))]),
            None => Self::zero(ctx),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Blade, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, b: Blade) -> RatFunc {
        self.terms.get(&b).cloned().unwrap_or_else(|| RatFunc::zero(&self.ctx))
    }

    /// Coefficient of `e_{c_1} ^ ... ^ e_{c_k}` (indices in any order).
    pub fn component(&self, coords: &[usize]) -> RatFunc {
        match sort_sign(coords) {
            Some((b, s)) if s < 0 => self.coeff(b).neg(),
            Some((b, _)) => self.coeff(b),
            None => RatFunc::zero(&self.ctx),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: Blade, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(old) => {
                let s = old.add(c);
                if s.is_zero() {
                    self.terms.remove(&b);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(b, c.clone());
            }
        }
    }

    /// Degree of a homogeneous element; `None` for zero.
    pub fn degree(&self) -> Result<Option<usize>> {
        let mut it = self.terms.keys().map(|b| b.len());
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::NonHomogeneous)
        }
    }

    /// The homogeneous component of degree `k`.
    pub fn part(&self, k: usize) -> Self {
        Self::from_terms(
            &self.ctx,
            self.terms
                .iter()
                .filter(|(b, _)| b.len() == k)
                .map(|(b, c)| (*b, c.clone())),
        )
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, f: &RatFunc) -> Self {
        if f.is_zero() {
            return Self::zero(&self.ctx);
        }
        self.map(|c| c.mul(f))
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(b, c)| (*b, f(c))))
    }

    pub fn try_map(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<Self> {
        let mut out = Self::zero(&self.ctx);
        for (b, c) in &self.terms {
            out.add_term(*b, &f(c)?);
        }
        Ok(out)
    }

    /// Panics when the contexts differ; use [`Alternating::try_add`] otherwise.
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("operands share a chart context")
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        check_ctx(&self.ctx, &o.ctx)?;
        let mut out = self.clone();
        for (b, c) in &o.terms {
            out.add_term(*b, c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn wedge(&self, o: &Self) -> Self {
        self.try_wedge(o).expect("operands share a chart context")
    }

    pub fn try_wedge(&self, o: &Self) -> Result<Self> {
        check_ctx(&self.ctx, &o.ctx)?;
        let mut out = Self::zero(&self.ctx);
        for (b1, c1) in &self.terms {
            for (b2, c2) in &o.terms {
                if let Some(s) = b1.wedge_sign(*b2) {
                    let c = c1.mul(c2);
                    out.add_term(b1.union(*b2), &if s < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Re-express in a larger context (for example one with an extra parameter).
    pub fn embed(&self, target: &Ctx) -> Result<Self> {
        if target.p() != self.ctx.p() || target.q() != self.ctx.q() {
            return Err(Error::ContextMismatch);
        }
        let mut out = Self::zero(target);
        for (b, c) in &self.terms {
            out.add_term(*b, &c.embed(target)?);
        }
        Ok(out)
    }
}

impl<B: Basis> fmt::Debug for Alternating<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<B: Basis> fmt::Display for Alternating<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.terms.iter().map(|(b, c)| {
            let basis: Vec<String> = b.indices().map(|i| B::symbol(&self.ctx, i)).collect();
            format_term(c, &basis.join("^"))
        });
        f.write_str(&join_terms(parts))
    }
}

/// `coef*basis` with unit coefficients elided and sums parenthesized.
pub(crate) fn format_term(c: &RatFunc, basis: &str) -> String {
    if basis.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return basis.to_string();
    }
    if c.neg().is_one() {
        return format!("-{basis}");
    }
    let s = c.to_string();
    if s[1..].contains(['+', '-']) {
        format!("({s})*{basis}")
    } else {
        format!("{s}*{basis}")
    }
}

pub(crate) fn join_terms(parts: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for p in parts {
        if !out.is_empty() && !p.starts_with('-') {
            out.push('+');
        }
        out.push_str(&p);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
