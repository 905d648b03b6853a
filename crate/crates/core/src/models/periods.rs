use crate::error::{Error, Result};
use crate::symbolic::gcd::lcm;
use crate::symbolic::lattice::{lattice_basis, solve_integer};
use crate::symbolic::{ChartContext, Ctx, MatrixRF, Monomial, Poly, RatFunc, Q};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Name of the formal period symbol (`4 pi` for the round sphere).
pub const PI: &str = "PI";

/// Symplectic periods of a family of leaves over transverse parameters.
///
/// Every period is `PI` times a rational function of the parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodModel {
    ctx: Ctx,
    periods: Vec<RatFunc>,
}

impl PeriodModel {
    /// Parameter-only chart with the transverse parameters followed by `PI`.
    pub fn context<S: AsRef<str>>(transverse: &[S]) -> Result<Ctx> {
        let mut params: Vec<&str> = transverse.iter().map(AsRef::as_ref).collect();
        params.push(PI);
        ChartContext::new::<&str>(&[], &[], &params)
    }

    pub fn pi(ctx: &Ctx) -> Result<RatFunc> {
        RatFunc::var_named(ctx, PI)
    }

    pub fn new(ctx: &Ctx, periods: Vec<RatFunc>) -> Result<Self> {
        let pv = ctx.var_index(PI).ok_or_else(|| Error::UnknownVariable(PI.into()))?;
        if ctx.p() + ctx.q() != 0 {
            return Err(Error::InvalidChart(
                "period models live on a parameter-only chart".into(),
            ));
        }
        let pi = RatFunc::var(ctx, pv);
        for (i, p) in periods.iter().enumerate() {
            crate::symbolic::context::check_ctx(ctx, p.ctx())?;
            let g = p.checked_div(&pi)?;
            if p.is_zero() || g.uses_var(pv) {
                return Err(Error::InvalidElement(format!(
                    "period {} is not PI times a function of the parameters",
                    i + 1
                )));
            }
        }
        Ok(PeriodModel {
            ctx: ctx.clone(),
            periods,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn periods(&self) -> &[RatFunc] {
        &self.periods
    }

    pub fn h2_rank(&self) -> usize {
        self.periods.len()
    }

    /// Indices of the transverse parameter variables.
    pub fn transverse(&self) -> Vec<usize> {
        let pv = self.ctx.var_index(PI).expect("checked");
        (0..self.ctx.nvars()).filter(|&v| v != pv).collect()
    }

    fn pi_var(&self) -> usize {
        self.ctx.var_index(PI).expect("checked")
    }
}

/// Sphere leaves of `(1 + r^2) pi_S2 + pi_lin`: periods `(PI/(1+r^2), PI r)`.
pub fn sphere_period_model() -> PeriodModel {
    let ctx = PeriodModel::context(&["r"]).expect("fixed names");
    let r = RatFunc::var(&ctx, 0);
    let pi = PeriodModel::pi(&ctx).expect("PI");
    let first = pi.checked_div(&RatFunc::one(&ctx).add(&r.mul(&r))).expect("nonzero");
    PeriodModel::new(&ctx, vec![first, pi.mul(&r)]).expect("valid periods")
}

/// Regular family `omega_t = omega_S + sum_i t_i omega_i (+ t_1^2 lambda)`,
/// given the periods of each class on a basis of cycles, in units of `PI`.
///
/// `omega[j][i]` is the period of `omega_i` on cycle `j`.
pub fn regular_model(base: &[Q], omega: &[Vec<Q>], quadratic: Option<&[Q]>) -> Result<PeriodModel> {
    let q = omega.first().map_or(0, Vec::len);
    let names: Vec<String> = (1..=q).map(|i| format!("t{i}")).collect();
    let ctx = PeriodModel::context(&names)?;
    let pi = PeriodModel::pi(&ctx)?;
    let mut periods = Vec::with_capacity(base.len());
    for (j, b) in base.iter().enumerate() {
        let row = omega
            .get(j)
            .ok_or_else(|| Error::InvalidElement("one omega row per cycle".into()))?;
        if row.len() != q {
            return Err(Error::InvalidElement("ragged omega periods".into()));
        }
        let mut p = RatFunc::constant(&ctx, b.clone());
        for (i, w) in row.iter().enumerate() {
            p = p.add(&RatFunc::var(&ctx, i).scale(w));
        }
        if let Some(l) = quadratic {
            let t1 = RatFunc::var(&ctx, 0);
            p = p.add(&t1.mul(&t1).scale(&l[j]));
        }
        periods.push(p.mul(&pi));
    }
    PeriodModel::new(&ctx, periods)
}

/// The `b x q` matrix `d P_j / d t_i`, symbolic or at a rational point.
pub fn monodromy(m: &PeriodModel, at: Option<&[Q]>) -> Result<MatrixRF> {
    let tv = m.transverse();
    let mut out = MatrixRF::from_fn(&m.ctx, m.h2_rank(), tv.len(), |j, i| m.periods[j].derivative(tv[i]));
    if let Some(point) = at {
        if point.len() != tv.len() {
            return Err(Error::InvalidElement(format!("expected {} parameter values", tv.len())));
        }
        for j in 0..out.rows() {
            for i in 0..out.cols() {
                let mut e = out.get(j, i).clone();
                for (v, x) in tv.iter().zip(point) {
                    e = e.eval_var(*v, x).map_err(|_| Error::SingularPoint)?;
                }
                out.set(j, i, e);
            }
        }
    }
    Ok(out)
}

/// Rows of a monodromy matrix, printed as `(g1, g2, ..)`; a generator with
/// several components prints as a parenthesized tuple.
pub fn format_generators(m: &MatrixRF) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|j| {
            let parts: Vec<String> = (0..m.cols()).map(|i| m.get(j, i).to_string()).collect();
            if parts.len() == 1 {
                parts.into_iter().next().expect("one")
            } else {
                format!("({})", parts.join(", "))
            }
        })
        .collect();
    format!("({})", rows.join(", "))
}

/// Subgroup generated by rational multiples of `PI`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discreteness {
    pub discrete: bool,
    pub rank: usize,
    /// A Z-basis, in units of `PI`.
    pub basis: Vec<Vec<Q>>,
}

/// Generators are the rows of `m`; entries must be rational multiples of `PI`.
pub fn lattice_discreteness(m: &MatrixRF) -> Result<Discreteness> {
    let pv = m.ctx().var_index(PI).ok_or(Error::NonRationalInput)?;
    let pi = RatFunc::var(m.ctx(), pv);
    let mut gens = Vec::with_capacity(m.rows());
    for j in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for i in 0..m.cols() {
            let c = m.get(j, i).checked_div(&pi)?;
            row.push(c.as_constant().ok_or(Error::NonRationalInput)?);
        }
        gens.push(row);
    }
    let basis = lattice_basis(&gens);
    Ok(Discreteness {
        discrete: true,
        rank: basis.len(),
        basis,
    })
}

/// Ratio `g_i / g_j` of two monodromy generators, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioCheck {
    pub pair: (usize, usize),
    /// `None` when the generators are not proportional.
    pub ratio: Option<RatFunc>,
    pub constant: bool,
}

impl RatioCheck {
    /// A proportionality factor that varies with the parameters.
    pub fn obstruction(&self) -> bool {
        self.ratio.is_some() && !self.constant
    }
}

fn ratio(gi: &[RatFunc], gj: &[RatFunc]) -> Result<Option<RatFunc>> {
    if gj.iter().all(RatFunc::is_zero) {
        return Err(Error::ZeroGenerator);
    }
    let mut found: Option<RatFunc> = None;
    for (a, b) in gi.iter().zip(gj) {
        if b.is_zero() {
            if !a.is_zero() {
                return Ok(None);
            }
            continue;
        }
        let r = a.checked_div(b)?;
        match &found {
            Some(f) if *f != r => return Ok(None),
            _ => found = Some(r),
        }
    }
    Ok(found)
}

pub fn ratio_constancy(m: &PeriodModel) -> Result<Vec<RatioCheck>> {
    let mono = monodromy(m, None)?;
    let row = |j: usize| -> Vec<RatFunc> { (0..mono.cols()).map(|i| mono.get(j, i).clone()).collect() };
    let mut out = Vec::new();
    for i in 0..mono.rows() {
        for j in i + 1..mono.rows() {
            let r = ratio(&row(i), &row(j))?;
            let constant = r.as_ref().is_some_and(|r| r.as_constant().is_some());
            out.push(RatioCheck {
                pair: (i, j),
                ratio: r,
                constant,
            });
        }
    }
    Ok(out)
}

/// Integers `m_i` with `f = sum_i m_i g_i` as rational functions, if any.
pub fn integer_affine_identity(f: &RatFunc, basis: &[RatFunc]) -> Result<Option<Vec<BigInt>>> {
    let ctx = f.ctx();
    let mut common = f.den().clone();
    for g in basis {
        crate::symbolic::context::check_ctx(ctx, g.ctx())?;
        common = lcm(&common, g.den());
    }
    let cleared = |g: &RatFunc| -> Poly { g.num().mul(&common.div_exact(g.den()).expect("lcm multiple")) };
    let target = cleared(f);
    let columns: Vec<Poly> = basis.iter().map(cleared).collect();
    let mut rows: BTreeMap<Monomial, (Vec<Q>, Q)> = BTreeMap::new();
    let width = basis.len();
    for (m, c) in target.terms() {
        rows.entry(m.clone())
            .or_insert_with(|| (vec![Q::zero(); width], Q::zero()))
            .1 = c.clone();
    }
    for (i, col) in columns.iter().enumerate() {
        for (m, c) in col.terms() {
            rows.entry(m.clone())
                .or_insert_with(|| (vec![Q::zero(); width], Q::zero()))
                .0[i] = c.clone();
        }
    }
    let (mat, rhs): (Vec<Vec<Q>>, Vec<Q>) = rows.into_values().unzip();
    if mat.is_empty() {
        return Ok(Some(vec![BigInt::zero(); width]));
    }
    Ok(solve_integer(&mat, &rhs))
}

/// Whether every period is affine (total degree at most one) in the
/// transverse parameters.
pub fn affine_in_params(m: &PeriodModel) -> bool {
    let pi = RatFunc::var(&m.ctx, m.pi_var());
    m.periods.iter().all(|p| {
        let g = p.checked_div(&pi).expect("nonzero PI");
        g.as_poly().is_some_and(|poly| poly.total_degree() <= 1)
    })
}
