use std::fmt;

use super::context::Ctx;
use super::gcd::lcm;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Dense matrix of rational functions.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixRF {
    ctx: Ctx,
    rows: usize,
    cols: usize,
    entries: Vec<RatFunc>,
}

impl fmt::Debug for MatrixRF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl MatrixRF {
    pub fn new(ctx: &Ctx, rows: usize, cols: usize, entries: Vec<RatFunc>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::WrongDegree {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(MatrixRF {
            ctx: ctx.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(ctx: &Ctx, rows: usize, cols: usize, f: impl Fn(usize, usize) -> RatFunc) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        MatrixRF {
            ctx: ctx.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(ctx: &Ctx, rows: usize, cols: usize) -> Self {
        Self::from_fn(ctx, rows, cols, |_, _| RatFunc::zero(ctx))
    }

    pub fn identity(ctx: &Ctx, n: usize) -> Self {
        Self::from_fn(
            ctx,
            n,
            n,
            |i, j| {
                if i == j {
                    RatFunc::one(ctx)
                } else {
                    RatFunc::zero(ctx)
                }
            },
        )
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: RatFunc) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }

    pub fn transpose(&self) -> MatrixRF {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> MatrixRF {
        Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| self.get(i, j).neg())
    }

    pub fn add(&self, o: &MatrixRF) -> Result<MatrixRF> {
        self.check_same_shape(o)?;
        Ok(Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| {
            self.get(i, j).add(o.get(i, j))
        }))
    }

    pub fn sub(&self, o: &MatrixRF) -> Result<MatrixRF> {
        self.check_same_shape(o)?;
        Ok(Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| {
            self.get(i, j).sub(o.get(i, j))
        }))
    }

    fn check_same_shape(&self, o: &MatrixRF) -> Result<()> {
        super::context::check_ctx(&self.ctx, &o.ctx)?;
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::WrongDegree {
                expected: self.rows * self.cols,
                found: o.rows * o.cols,
            });
        }
        Ok(())
    }

    pub fn mul(&self, o: &MatrixRF) -> Result<MatrixRF> {
        super::context::check_ctx(&self.ctx, &o.ctx)?;
        if self.cols != o.rows {
            return Err(Error::WrongDegree {
                expected: self.cols,
                found: o.rows,
            });
        }
        Ok(Self::from_fn(&self.ctx, self.rows, o.cols, |i, j| {
            (0..self.cols).fold(RatFunc::zero(&self.ctx), |acc, k| {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(b))
                }
            })
        }))
    }

    /// Rows cleared of denominators: returns the polynomial matrix `P` and
    /// row multipliers `D` with `self = diag(D)^-1 P`.
    fn clear_rows(&self) -> (Vec<Vec<Poly>>, Vec<Poly>) {
        let mut p = Vec::with_capacity(self.rows);
        let mut ds = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let d = (0..self.cols).fold(Poly::one(&self.ctx), |acc, j| lcm(&acc, self.get(i, j).den()));
            let row = (0..self.cols)
                .map(|j| {
                    let e = self.get(i, j);
                    let k = d.div_exact(e.den()).expect("lcm is a multiple");
                    e.num().mul(&k)
                })
                .collect();
            p.push(row);
            ds.push(d);
        }
        (p, ds)
    }

    /// Fraction-free elimination on `[P | rhs]`. Returns the row-swap sign,
    /// the upper-triangular part and the transformed right-hand side.
    fn bareiss(mut m: Vec<Vec<Poly>>, n: usize) -> std::result::Result<(i32, Vec<Vec<Poly>>), Error> {
        let width = m.first().map_or(0, Vec::len);
        let ctx = m[0][0].ctx().clone();
        let mut sign = 1;
        let mut prev = Poly::one(&ctx);
        for k in 0..n {
            let pivot = (k..n).find(|&i| !m[i][k].is_zero()).ok_or(Error::SingularMatrix)?;
            if pivot != k {
                m.swap(pivot, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..width {
                    let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = Poly::zero(&ctx);
            }
            prev = m[k][k].clone();
        }
        Ok((sign, m))
    }

    pub fn det(&self) -> Result<RatFunc> {
        if self.rows != self.cols {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RatFunc::one(&self.ctx));
        }
        let (p, ds) = self.clear_rows();
        let (sign, m) = match Self::bareiss(p, n) {
            Ok(r) => r,
            Err(_) => return Ok(RatFunc::zero(&self.ctx)),
        };
        let dprod = ds.iter().fold(Poly::one(&self.ctx), |acc, d| acc.mul(d));
        let det = if sign < 0 {
            m[n - 1][n - 1].neg()
        } else {
            m[n - 1][n - 1].clone()
        };
        RatFunc::new(det, dprod)
    }

    /// Inverse by fraction-free elimination and back substitution.
    pub fn inverse(&self) -> Result<MatrixRF> {
        if self.rows != self.cols {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let ctx = self.ctx.clone();
        if n == 0 {
            return Ok(self.clone());
        }
        let (p, ds) = self.clear_rows();
        let aug: Vec<Vec<Poly>> = p
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| if i == j { Poly::one(&ctx) } else { Poly::zero(&ctx) }));
                row
            })
            .collect();
        let (_, m) = Self::bareiss(aug, n)?;
        let d = m[n - 1][n - 1].clone();
        if d.is_zero() {
            return Err(Error::SingularMatrix);
        }
        // X = d * P^-1, solved row by row from the bottom; entries are polynomials.
        let mut x: Vec<Vec<Poly>> = vec![vec![Poly::zero(&ctx); n]; n];
        for i in (0..n).rev() {
            for j in 0..n {
                let mut acc = d.mul(&m[i][n + j]);
                for l in i + 1..n {
                    if !m[i][l].is_zero() {
                        acc = acc.sub(&m[i][l].mul(&x[l][j]));
                    }
                }
                x[i][j] = acc.div_exact(&m[i][i]).expect("back substitution is exact");
            }
        }
        let drf = RatFunc::from_poly(d);
        let mut out = MatrixRF::zeros(&ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                let e = RatFunc::from_poly(x[i][j].mul(&ds[j]))
                    .checked_div(&drf)
                    .expect("nonzero determinant");
                out.set(i, j, e);
            }
        }
        Ok(out)
    }
}
