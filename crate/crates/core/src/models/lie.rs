use crate::error::{Error, Result};
use crate::multivector::{Blade, Multivector};
use crate::symbolic::{ChartContext, Ctx, RatFunc, Q};
use num_traits::{One, Zero};

/// Structure constants `[e_a, e_b] = sum_k c^k_ab e_k` of a Lie algebra,
/// checked for the Jacobi identity on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    dim: usize,
    /// `c[k][a][b]`.
    c: Vec<Vec<Vec<Q>>>,
}

impl LieAlgebraData {
    /// Builds from entries `(a, b, k, c^k_ab)` with `a < b` or `a > b`; the
    /// antisymmetric partner is filled in.
    pub fn new(dim: usize, entries: &[(usize, usize, usize, Q)]) -> Result<Self> {
        let mut c = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for (a, b, k, v) in entries {
            let (a, b, k) = (*a, *b, *k);
            if a >= dim || b >= dim || k >= dim {
                return Err(Error::InvalidElement(format!(
                    "structure constant index out of range: ({a},{b},{k})"
                )));
            }
            if a == b {
                if !v.is_zero() {
                    return Err(Error::InvalidElement(format!("[e{0},e{0}] must vanish", a + 1)));
                }
                continue;
            }
            c[k][a][b] = v.clone();
            c[k][b][a] = -v.clone();
        }
        let g = LieAlgebraData { dim, c };
        if !g.jacobi_residual().iter().all(Q::is_zero) {
            return Err(Error::JacobiFailed);
        }
        Ok(g)
    }

    pub fn so3() -> Self {
        let one = Q::one();
        Self::new(3, &[(0, 1, 2, one.clone()), (1, 2, 0, one.clone()), (2, 0, 1, one)]).expect("so(3)")
    }

    pub fn heisenberg3() -> Self {
        Self::new(3, &[(0, 1, 2, Q::one())]).expect("heisenberg")
    }

    /// `[e1, e2] = e2`.
    pub fn aff1() -> Self {
        Self::new(2, &[(0, 1, 1, Q::one())]).expect("aff(1)")
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(dim, &[]).expect("abelian")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, k: usize, a: usize, b: usize) -> &Q {
        &self.c[k][a][b]
    }

    /// All components of `[[e_a,e_b],e_c] + cyclic`, flattened.
    fn jacobi_residual(&self) -> Vec<Q> {
        let n = self.dim;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for l in 0..n {
                        let mut s = Q::zero();
                        for m in 0..n {
                            s += &self.c[m][a][b] * &self.c[l][m][c];
                            s += &self.c[m][b][c] * &self.c[l][m][a];
                            s += &self.c[m][c][a] * &self.c[l][m][b];
                        }
                        out.push(s);
                    }
                }
            }
        }
        out
    }
}

/// `pi_lin = sum_{a<b} c^k_ab y_k d/dy^a ^ d/dy^b` on a fiber-only chart `y1..yq`.
pub fn linear_poisson(g: &LieAlgebraData) -> Multivector {
    let names: Vec<String> = (1..=g.dim()).map(|i| format!("y{i}")).collect();
    let ctx = ChartContext::new::<String>(&[], &names, &[]).expect("fresh names");
    linear_poisson_in(g, &ctx).expect("dimensions agree")
}

/// `pi_lin` on the fiber coordinates of `ctx`.
pub fn linear_poisson_in(g: &LieAlgebraData, ctx: &Ctx) -> Result<Multivector> {
    if ctx.q() != g.dim() {
        return Err(Error::ContextMismatch);
    }
    let p = ctx.p();
    let mut out = Multivector::zero(ctx);
    for a in 0..g.dim() {
        for b in a + 1..g.dim() {
            let mut coef = RatFunc::zero(ctx);
            for k in 0..g.dim() {
                let ck = g.structure_constant(k, a, b);
                if !ck.is_zero() {
                    coef = coef.add(&RatFunc::var(ctx, ctx.fiber_var(k)).scale(ck));
                }
            }
            out.add_term(Blade::from_indices(&[p + a, p + b]), &coef);
        }
    }
    Ok(out)
}

/// Coordinates and variables a multivector touches.
fn support(m: &Multivector) -> (Vec<usize>, Vec<bool>) {
    let ctx = m.ctx();
    let mut coords = Vec::new();
    let mut vars = vec![false; ctx.nvars()];
    for (b, c) in m.terms() {
        coords.extend(b.indices());
        for v in 0..ctx.nvars() {
            vars[v] |= c.uses_var(v);
        }
    }
    (coords, vars)
}

/// Sum of two bivectors with disjoint coordinate supports.
pub fn product_poisson(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    let ctx = a.ctx();
    let (ca, va) = support(a);
    let (cb, vb) = support(b);
    let touches = |coords: &[usize], vars: &[bool], c: usize| coords.contains(&c) || vars[ctx.coord_var(c)];
    for c in 0..ctx.dim() {
        if touches(&ca, &va, c) && touches(&cb, &vb, c) {
            return Err(Error::VariableOverlap);
        }
    }
    a.try_add(b)
}
