use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Variables of a local trivialization `E = S x R^q`, plus formal parameters.
///
/// Variable indices run over params, then base, then fiber. Coordinate
/// indices (used by multivectors and forms) run over base then fiber only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChartContext {
    params: Vec<String>,
    base: Vec<String>,
    fiber: Vec<String>,
}

/// Shared handle to a chart context.
pub type Ctx = Arc<ChartContext>;

impl ChartContext {
    pub fn new<S: AsRef<str>>(base: &[S], fiber: &[S], params: &[S]) -> Result<Ctx> {
        let own = |v: &[S]| v.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>();
        let ctx = ChartContext {
            params: own(params),
            base: own(base),
            fiber: own(fiber),
        };
        let mut seen = HashSet::new();
        for name in ctx.names() {
            if name.is_empty() {
                return Err(Error::InvalidChart("empty variable name".into()));
            }
            if !seen.insert(name) {
                return Err(Error::InvalidChart(format!("duplicate variable `{name}`")));
            }
        }
        if ctx.base.len() + ctx.fiber.len() > 60 {
            return Err(Error::InvalidChart("too many coordinates".into()));
        }
        Ok(Arc::new(ctx))
    }

    fn names(&self) -> impl Iterator<Item = &str> {
        self.params
            .iter()
            .chain(&self.base)
            .chain(&self.fiber)
            .map(String::as_str)
    }

    pub fn nvars(&self) -> usize {
        self.params.len() + self.base.len() + self.fiber.len()
    }

    pub fn n_params(&self) -> usize {
        self.params.len()
    }

    /// Base dimension p.
    pub fn p(&self) -> usize {
        self.base.len()
    }

    /// Fiber dimension q.
    pub fn q(&self) -> usize {
        self.fiber.len()
    }

    /// Number of coordinates on E.
    pub fn dim(&self) -> usize {
        self.p() + self.q()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn fiber(&self) -> &[String] {
        &self.fiber
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names().position(|n| n == name)
    }

    pub fn var_name(&self, v: usize) -> &str {
        let m = self.params.len();
        let p = self.base.len();
        if v < m {
            &self.params[v]
        } else if v < m + p {
            &self.base[v - m]
        } else {
            &self.fiber[v - m - p]
        }
    }

    /// Variable index of coordinate `c` (base coordinates first).
    pub fn coord_var(&self, c: usize) -> usize {
        self.params.len() + c
    }

    /// Coordinate index of a variable, if it is a coordinate.
    pub fn var_coord(&self, v: usize) -> Option<usize> {
        v.checked_sub(self.params.len()).filter(|&c| c < self.dim())
    }

    pub fn coord_name(&self, c: usize) -> &str {
        self.var_name(self.coord_var(c))
    }

    pub fn base_var(&self, i: usize) -> usize {
        self.params.len() + i
    }

    pub fn fiber_var(&self, a: usize) -> usize {
        self.params.len() + self.base.len() + a
    }

    pub fn is_fiber_var(&self, v: usize) -> bool {
        v >= self.params.len() + self.base.len()
    }

    pub fn is_base_var(&self, v: usize) -> bool {
        v >= self.params.len() && v < self.params.len() + self.base.len()
    }

    pub fn is_param(&self, v: usize) -> bool {
        v < self.params.len()
    }

    /// A context with one extra formal parameter appended to the params.
    pub fn with_param(&self, name: &str) -> Result<Ctx> {
        let mut params = self.params.clone();
        params.push(name.to_string());
        ChartContext::new(&self.base, &self.fiber, &params)
    }

    /// A parameter name not used by this context, starting from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        while self.var_index(&name).is_some() {
            name.push('_');
        }
        name
    }
}

impl fmt::Display for ChartContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "chart {{ base:[{}]; fiber:[{}]; params:[{}]; }}",
            self.base.join(","),
            self.fiber.join(","),
            self.params.join(",")
        )
    }
}

pub(crate) fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_ctx(a: &Ctx, b: &Ctx) -> Result<()> {
    if same_ctx(a, b) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}
