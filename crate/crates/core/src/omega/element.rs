use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::multivector::{format_term, join_terms, Blade, DiffForm, Multivector};
use crate::symbolic::context::{check_ctx, Ctx};
use crate::symbolic::RatFunc;

/// `dx^I (x) d/dx^J ^ d/dy^K`. `I` and `J` index base coordinates, `K`
/// indexes fiber coordinates (`0..q`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedKey {
    pub i: Blade,
    pub j: Blade,
    pub k: Blade,
}

impl MixedKey {
    pub fn new(i: Blade, j: Blade, k: Blade) -> Self {
        MixedKey { i, j, k }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.i.len(), self.j.len() + self.k.len())
    }

    /// Degree in the graded Lie algebra, `|I| + |J| + |K| - 1`.
    pub fn lie_degree(&self) -> i64 {
        (self.i.len() + self.j.len() + self.k.len()) as i64 - 1
    }

    pub fn is_horizontal(&self) -> bool {
        !self.j.is_empty()
    }
}

/// Which space an element belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    /// Only `J = {}` terms.
    OmegaE,
    /// Also terms `a(x) dx^I (x) d/dx^j`.
    OmegaTilde,
    Invalid(String),
}

/// Coordinate expression of an element of the bigraded algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct MixedElement {
    ctx: Ctx,
    terms: BTreeMap<MixedKey, RatFunc>,
}

impl MixedElement {
    pub fn zero(ctx: &Ctx) -> Self {
        MixedElement {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(ctx: &Ctx, terms: impl IntoIterator<Item = (MixedKey, RatFunc)>) -> Self {
        let mut out = Self::zero(ctx);
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn scalar(f: RatFunc) -> Self {
        let ctx = f.ctx().clone();
        Self::from_terms(&ctx, [(MixedKey::default(), f)])
    }

    /// `dx^I` as a `(|I|, 0)` element; `coords` are base indices in any order.
    pub fn dx(ctx: &Ctx, coords: &[usize]) -> Self {
        Self::from_form(&DiffForm::basis(ctx, coords)).expect("base coordinates")
    }

    /// `d/dx^j` as a `(0, 1)` element.
    pub fn d_base(ctx: &Ctx, j: usize) -> Self {
        Self::from_terms(
            ctx,
            [(
                MixedKey::new(Blade::EMPTY, Blade::single(j), Blade::EMPTY),
                RatFunc::one(ctx),
            )],
        )
    }

    /// `d/dy^a` as a `(0, 1)` element.
    pub fn d_fiber(ctx: &Ctx, a: usize) -> Self {
        Self::from_terms(
            ctx,
            [(
                MixedKey::new(Blade::EMPTY, Blade::EMPTY, Blade::single(a)),
                RatFunc::one(ctx),
            )],
        )
    }

    /// A form on `E` whose terms involve only base differentials.
    pub fn from_form(w: &DiffForm) -> Result<Self> {
        let p = w.ctx().p();
        let mut out = Self::zero(w.ctx());
        for (b, c) in w.terms() {
            if b.0 >> p != 0 {
                return Err(Error::InvalidElement("form involves fiber differentials".into()));
            }
            out.add_term(MixedKey::new(*b, Blade::EMPTY, Blade::EMPTY), c);
        }
        Ok(out)
    }

    /// A multivector on `E`: `d/dx` parts go to `J`, `d/dy` parts to `K`.
    pub fn from_multivector(m: &Multivector) -> Self {
        let p = m.ctx().p();
        let low = (1u64 << p) - 1;
        Self::from_terms(
            m.ctx(),
            m.terms().iter().map(|(b, c)| {
                (
                    MixedKey::new(Blade::EMPTY, Blade(b.0 & low), Blade(b.0 >> p)),
                    c.clone(),
                )
            }),
        )
    }

    /// Inverse of [`MixedElement::from_multivector`] on `I = {}` elements.
    pub fn to_multivector(&self) -> Result<Multivector> {
        let p = self.ctx.p();
        let mut out = Multivector::zero(&self.ctx);
        for (k, c) in &self.terms {
            if !k.i.is_empty() {
                return Err(Error::InvalidElement("element has form degree".into()));
            }
            out.add_term(Blade(k.j.0 | (k.k.0 << p)), c);
        }
        Ok(out)
    }

    /// Inverse of [`MixedElement::from_form`] on `(r, 0)` elements.
    pub fn to_form(&self) -> Result<DiffForm> {
        let mut out = DiffForm::zero(&self.ctx);
        for (k, c) in &self.terms {
            if !k.j.is_empty() || !k.k.is_empty() {
                return Err(Error::InvalidElement("element has vector degree".into()));
            }
            out.add_term(k.i, c);
        }
        Ok(out)
    }

    /// `w (x) X` for a base form `w` and a vertical multivector `X`.
    pub fn tensor(w: &DiffForm, x: &Multivector) -> Result<Self> {
        check_ctx(w.ctx(), x.ctx())?;
        let f = Self::from_form(w)?;
        let v = Self::from_multivector(x);
        if v.terms.keys().any(|k| !k.j.is_empty()) {
            return Err(Error::InvalidElement("multivector is not vertical".into()));
        }
        f.wedge(&v)
    }

    /// `w (x) d/dx^j` for a base form `w`.
    pub fn horizontal(w: &DiffForm, j: usize) -> Result<Self> {
        let f = Self::from_form(w)?;
        Ok(Self::from_terms(
            w.ctx(),
            f.terms
                .into_iter()
                .map(|(k, c)| (MixedKey::new(k.i, Blade::single(j), Blade::EMPTY), c)),
        ))
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<MixedKey, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, k: &MixedKey) -> RatFunc {
        self.terms.get(k).cloned().unwrap_or_else(|| RatFunc::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: MixedKey, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(old) => {
                let s = old.add(c);
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("operands share a chart context")
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        check_ctx(&self.ctx, &o.ctx)?;
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
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

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&RatFunc::integer(&self.ctx, n))
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    pub fn try_map(&self, f: impl Fn(&MixedKey, &RatFunc) -> Result<RatFunc>) -> Result<Self> {
        let mut out = Self::zero(&self.ctx);
        for (k, c) in &self.terms {
            out.add_term(*k, &f(k, c)?);
        }
        Ok(out)
    }

    pub fn filter(&self, keep: impl Fn(&MixedKey) -> bool) -> Self {
        Self::from_terms(
            &self.ctx,
            self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.terms.keys().map(MixedKey::bidegree).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The component of bidegree `(r, s)`.
    pub fn part(&self, r: usize, s: usize) -> Self {
        self.filter(|k| k.bidegree() == (r, s))
    }

    /// Lie degree of a homogeneous element; `None` for zero.
    pub fn lie_degree(&self) -> Result<Option<i64>> {
        let mut it = self.terms.keys().map(MixedKey::lie_degree);
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::NonHomogeneous)
        }
    }

    /// The `J = {}` component.
    pub fn vertical_part(&self) -> Self {
        self.filter(|k| k.j.is_empty())
    }

    /// The `|J| = 1` component, i.e. `p_S` of an element of the tilde space.
    pub fn p_s(&self) -> Self {
        self.filter(MixedKey::is_horizontal)
    }

    pub fn classify(&self) -> Space {
        let mut tilde = false;
        for (k, c) in &self.terms {
            if k.j.is_empty() {
                continue;
            }
            tilde = true;
            if k.j.len() != 1 || !k.k.is_empty() {
                return Space::Invalid(format!(
                    "term {} mixes base and fiber directions",
                    self.term_string(k, c)
                ));
            }
            if !c.is_base_only() {
                return Space::Invalid(format!(
                    "term {} has a fiber-dependent coefficient",
                    self.term_string(k, c)
                ));
            }
        }
        if tilde {
            Space::OmegaTilde
        } else {
            Space::OmegaE
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match self.classify() {
            Space::Invalid(msg) => Err(Error::InvalidElement(msg)),
            _ => Ok(()),
        }
    }

    /// Product in the exterior algebra on `dx` and `d/dy` generators, with
    /// the `dx` generators ordered first. Defined for `J = {}` elements.
    pub fn wedge(&self, o: &Self) -> Result<Self> {
        check_ctx(&self.ctx, &o.ctx)?;
        let mut out = Self::zero(&self.ctx);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                if !k1.j.is_empty() || !k2.j.is_empty() {
                    return Err(Error::InvalidElement("wedge of base vector directions".into()));
                }
                let (Some(si), Some(sk)) = (k1.i.wedge_sign(k2.i), k1.k.wedge_sign(k2.k)) else {
                    continue;
                };
                let cross = k1.k.len() * k2.i.len() % 2 == 1;
                let neg = (si * sk < 0) != cross;
                let c = c1.mul(c2);
                out.add_term(
                    MixedKey::new(k1.i.union(k2.i), Blade::EMPTY, k1.k.union(k2.k)),
                    &if neg { c.neg() } else { c },
                );
            }
        }
        Ok(out)
    }

    /// Re-express in a context with the same coordinates and more params.
    pub fn embed(&self, target: &Ctx) -> Result<Self> {
        if target.p() != self.ctx.p() || target.q() != self.ctx.q() {
            return Err(Error::ContextMismatch);
        }
        let mut out = Self::zero(target);
        for (k, c) in &self.terms {
            out.add_term(*k, &c.embed(target)?);
        }
        Ok(out)
    }

    fn term_string(&self, k: &MixedKey, c: &RatFunc) -> String {
        let ctx = &self.ctx;
        let p = ctx.p();
        let forms: Vec<String> = k.i.indices().map(|i| format!("dx[{}]", ctx.coord_name(i))).collect();
        let vecs: Vec<String> =
            k.j.indices()
                .map(|j| format!("d/d{}", ctx.coord_name(j)))
                .chain(k.k.indices().map(|a| format!("d/d{}", ctx.coord_name(p + a))))
                .collect();
        let basis = match (forms.is_empty(), vecs.is_empty()) {
            (_, true) => forms.join("^"),
            (true, false) => vecs.join("^"),
            (false, false) => format!("{}&{}", forms.join("^"), vecs.join("^")),
        };
        format_term(c, &basis)
    }
}

impl Default for MixedKey {
    fn default() -> Self {
        MixedKey::new(Blade::EMPTY, Blade::EMPTY, Blade::EMPTY)
    }
}

impl fmt::Display for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(self.terms.iter().map(|(k, c)| self.term_string(k, c))))
    }
}

impl fmt::Debug for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
