use crate::error::{Error, Result};
use crate::multivector::{schouten, Blade, Multivector};
use crate::omega::{jet_n, DiracElement, MixedKey};
use crate::symbolic::{Ctx, RatFunc};

/// Lie algebroid `TS + E*` read off a first-order Dirac element.
///
/// `[X, e^a] = hor(X)(y_a)`, `[e^a, e^b] = [y_b, [pi^v, y_a]]` and
/// `[X, Y] = sigma(X, Y)` on coordinate fields, where `sigma` is the
/// fiber-linear part of `F`.
///
/// Frame order: `d/dx^1..d/dx^p`, then `e^1..e^q`, where `e^a` is the
/// fiber-linear function `y_a`. A section is its list of `p + q` coefficients,
/// each a function of the base variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebroidData {
    ctx: Ctx,
    table: Vec<Vec<Vec<RatFunc>>>,
}

/// Coefficients of a fiber-linear function in the frame `e^a`.
fn linear_coords(ctx: &Ctx, f: &RatFunc) -> Result<Vec<RatFunc>> {
    let coords: Vec<RatFunc> = (0..ctx.q()).map(|a| f.derivative(ctx.fiber_var(a))).collect();
    let rebuilt = coords.iter().enumerate().fold(RatFunc::zero(ctx), |acc, (a, c)| {
        acc.add(&c.mul(&RatFunc::var(ctx, ctx.fiber_var(a))))
    });
    if rebuilt != *f || coords.iter().any(RatFunc::depends_on_fiber) {
        return Err(Error::NotFirstOrder);
    }
    Ok(coords)
}

impl AlgebroidData {
    pub fn from_jet(g: &DiracElement) -> Result<Self> {
        let m = g.to_mixed();
        if jet_n(&m, 1)? != m {
            return Err(Error::NotFirstOrder);
        }
        let ctx = g.ctx().clone();
        let (p, q) = (ctx.p(), ctx.q());
        let n = p + q;
        let pv = g.v_part().to_multivector()?;
        let zero_section = |ctx: &Ctx| vec![RatFunc::zero(ctx); n];
        let dual = |coords: Vec<RatFunc>| -> Vec<RatFunc> {
            let mut s = zero_section(&ctx);
            s[p..].clone_from_slice(&coords);
            s
        };
        let mut table = vec![vec![zero_section(&ctx); n]; n];
        for i in 0..p {
            for j in 0..p {
                let f = g.f_part().coeff(&MixedKey::new(
                    Blade::from_indices(&[i.min(j), i.max(j)]),
                    Blade::EMPTY,
                    Blade::EMPTY,
                ));
                let f = if i > j { f.neg() } else { f };
                let linear = f.sub(&f.at_zero_section()?);
                table[i][j] = dual(linear_coords(&ctx, &linear)?);
            }
            for a in 0..q {
                let nia = g
                    .conn_part()
                    .coeff(&MixedKey::new(Blade::single(i), Blade::EMPTY, Blade::single(a)));
                let c = linear_coords(&ctx, &nia)?;
                table[i][p + a] = dual(c.clone());
                table[p + a][i] = dual(c.iter().map(RatFunc::neg).collect());
            }
        }
        for a in 0..q {
            let ya = Multivector::scalar(RatFunc::var(&ctx, ctx.fiber_var(a)));
            let ham = schouten(&pv, &ya)?;
            for b in 0..q {
                let yb = Multivector::scalar(RatFunc::var(&ctx, ctx.fiber_var(b)));
                let f = schouten(&yb, &ham)?.coeff(Blade::EMPTY);
                table[p + a][p + b] = dual(linear_coords(&ctx, &f)?);
            }
        }
        Ok(AlgebroidData { ctx, table })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.table.len()
    }

    /// `[e_i, e_j]` for frame indices.
    pub fn frame_bracket(&self, i: usize, j: usize) -> &[RatFunc] {
        &self.table[i][j]
    }

    /// The anchor applied to a section and then to a base function.
    fn anchor_apply(&self, u: &[RatFunc], f: &RatFunc) -> RatFunc {
        (0..self.ctx.p()).fold(RatFunc::zero(&self.ctx), |acc, i| {
            acc.add(&u[i].mul(&f.derivative(self.ctx.base_var(i))))
        })
    }

    pub fn basis(&self, i: usize) -> Vec<RatFunc> {
        let mut s = vec![RatFunc::zero(&self.ctx); self.rank()];
        s[i] = RatFunc::one(&self.ctx);
        s
    }

    pub fn bracket(&self, u: &[RatFunc], v: &[RatFunc]) -> Vec<RatFunc> {
        let n = self.rank();
        let mut out: Vec<RatFunc> = (0..n)
            .map(|k| self.anchor_apply(u, &v[k]).sub(&self.anchor_apply(v, &u[k])))
            .collect();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let c = u[i].mul(&v[j]);
                for (k, s) in self.table[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] = out[k].add(&c.mul(s));
                    }
                }
            }
        }
        out
    }

    /// Jacobiator on every frame triple `i < j < k`, nonzero entries only.
    pub fn jacobi_residuals(&self) -> Vec<((usize, usize, usize), Vec<RatFunc>)> {
        let n = self.rank();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let terms = [
                        self.bracket(&self.bracket(&a, &b), &c),
                        self.bracket(&self.bracket(&b, &c), &a),
                        self.bracket(&self.bracket(&c, &a), &b),
                    ];
                    let sum: Vec<RatFunc> = (0..n)
                        .map(|m| terms.iter().fold(RatFunc::zero(&self.ctx), |acc, t| acc.add(&t[m])))
                        .collect();
                    if sum.iter().any(|s| !s.is_zero()) {
                        bad.push(((i, j, k), sum));
                    }
                }
            }
        }
        bad
    }

    /// Frame brackets whose anchor is not the bracket of anchors.
    pub fn anchor_residuals(&self) -> Vec<(usize, usize)> {
        let p = self.ctx.p();
        let n = self.rank();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.table[i][j][..p].iter().any(|s| !s.is_zero()) {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    pub fn is_lie_algebroid(&self) -> bool {
        self.jacobi_residuals().is_empty() && self.anchor_residuals().is_empty()
    }
}

pub fn algebroid_from_jet(g: &DiracElement) -> Result<AlgebroidData> {
    AlgebroidData::from_jet(g)
}
