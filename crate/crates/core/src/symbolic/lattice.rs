//! Integer linear algebra: Smith normal form, integer solutions of rational
//! systems, and bases of finitely generated subgroups of Q^n.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Q;

type IMat = Vec<Vec<BigInt>>;

/// `U * M * V = diag(d_0, d_1, ..)` with `U`, `V` unimodular and
/// `d_i | d_{i+1}`. Zero diagonal entries trail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: IMat,
    pub v: IMat,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn row_axpy(m: &mut IMat, dst: usize, src: usize, k: &BigInt) {
    for j in 0..m[dst].len() {
        let t = &m[src][j] * k;
        m[dst][j] -= t;
    }
}

fn col_axpy(m: &mut IMat, dst: usize, src: usize, k: &BigInt) {
    for row in m.iter_mut() {
        let t = &row[src] * k;
        row[dst] -= t;
    }
}

fn swap_cols(m: &mut IMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith_normal_form(m: &[Vec<BigInt>]) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: IMat = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    swap_cols(&mut a, t, j);
                    swap_cols(&mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    let m1 = -BigInt::one();
                    row_axpy(&mut a, t, i, &m1);
                    row_axpy(&mut u, t, i, &m1);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i].clone()).collect();
    Smith { diag, u, v }
}

fn denom_lcm(xs: impl Iterator<Item = Q>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// An integer vector `x` with `m * x = b`, or `None` when no integer
/// solution exists. Free coordinates are set to zero.
pub fn solve_integer(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<BigInt>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut mi: IMat = Vec::with_capacity(m.len());
    let mut bi: Vec<BigInt> = Vec::with_capacity(m.len());
    for (row, rhs) in m.iter().zip(b) {
        let l = denom_lcm(row.iter().cloned().chain(std::iter::once(rhs.clone())));
        let lq = Q::from_integer(l);
        mi.push(row.iter().map(|x| (x * &lq).to_integer()).collect());
        bi.push((rhs * &lq).to_integer());
    }
    let s = smith_normal_form(&mi);
    let c: Vec<BigInt> =
        s.u.iter()
            .map(|row| row.iter().zip(&bi).map(|(x, y)| x * y).sum())
            .collect();
    let mut y = vec![BigInt::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        let d = s.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ci.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(
        s.v.iter()
            .map(|row| row.iter().zip(&y).map(|(x, yy)| x * yy).sum())
            .collect(),
    )
}

/// Rank over Q.
pub fn rational_rank(rows: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<Q>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for i in rank + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let k = &a[i][c] / &pivot;
            for j in c..cols {
                let t = &a[rank][j] * &k;
                a[i][j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// A Z-basis (echelon form, leading entries positive) of the subgroup of Q^n generated by `gens`.
pub fn lattice_basis(gens: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let cols = gens.first().map_or(0, Vec::len);
    let l = denom_lcm(gens.iter().flatten().cloned());
    let lq = Q::from_integer(l.clone());
    let mut a: IMat = gens
        .iter()
        .map(|r| r.iter().map(|x| (x * &lq).to_integer()).collect())
        .collect();
    let mut top = 0;
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (top..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    a.swap(top, i);
                    top += 1;
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).expect("nonempty");
            for &i in &nz {
                if i != p {
                    let q = a[i][c].div_floor(&a[p][c]);
                    row_axpy(&mut a, i, p, &q);
                }
            }
        }
    }
    a.truncate(top);
    for row in &mut a {
        if row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            row.iter_mut().for_each(|x| *x = -&*x);
        }
    }
    a.into_iter()
        .map(|r| r.into_iter().map(|x| Q::new(x, l.clone())).collect())
        .collect()
}
