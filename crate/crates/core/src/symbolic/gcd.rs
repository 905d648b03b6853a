//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive scheme: strip monomial contents, reduce variables that occur in
//! only one operand through contents, certify coprimality cheaply with a
//! univariate image, and otherwise run the subresultant PRS in a main variable
//! with coefficients in the remaining variables.

use num_traits::{One, Zero};

use super::poly::{q_int, Monomial, Poly, Q};

/// Gcd normalized by [`Poly::primitive`]; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.ctx());
    }
    if a == b {
        return a.primitive();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.gcd(&mb);
    let a1 = strip(a, &ma);
    let b1 = strip(b, &mb);
    let g = gcd_stripped(&a1, &b1);
    if m.is_one() {
        g
    } else {
        g.mul_monomial(&m, &Q::one())
    }
}

/// Least common multiple, primitive.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.ctx());
    }
    let g = gcd(a, b);
    a.div_exact(&g).expect("gcd divides its argument").mul(b).primitive()
}

fn strip(p: &Poly, m: &Monomial) -> Poly {
    if m.is_one() {
        p.clone()
    } else {
        p.div_exact(&Poly::monomial(p.ctx(), m.clone(), Q::one()))
            .expect("monomial content divides")
    }
}

fn gcd_stripped(a: &Poly, b: &Poly) -> Poly {
    let ctx = a.ctx();
    if a.is_constant() || b.is_constant() || a.len() == 1 || b.len() == 1 {
        return Poly::one(ctx);
    }
    if a == b {
        return a.primitive();
    }
    let ua = a.vars_used();
    let ub = b.vars_used();
    for v in 0..ua.len() {
        if ua[v] && !ub[v] {
            return gcd_through_coeffs(a, v, b);
        }
        if ub[v] && !ua[v] {
            return gcd_through_coeffs(b, v, a);
        }
    }
    let common: Vec<usize> = (0..ua.len()).filter(|&v| ua[v]).collect();
    if common.len() == 1 {
        return univariate_gcd(a, b, common[0]);
    }
    let v = *common
        .iter()
        .min_by_key(|&&v| (a.degree_in_var(v).max(b.degree_in_var(v)), v))
        .expect("nonempty");

    let image_deg = image_gcd_degree(a, b, v);
    if image_deg == Some(0) {
        let ca = content_in(a, v);
        let cb = content_in(b, v);
        return gcd(&ca, &cb);
    }

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");

    let (small, large) = if pa.degree_in_var(v) <= pb.degree_in_var(v) {
        (&pa, &pb)
    } else {
        (&pb, &pa)
    };
    if image_deg == Some(small.degree_in_var(v) as usize) && large.div_exact(small).is_some() {
        return c.mul(small).primitive();
    }

    let g = subresultant_gcd(&pa, &pb, v);
    let g = if g.uses_var(v) {
        let cg = content_in(&g, v);
        g.div_exact(&cg).expect("content divides")
    } else {
        Poly::one(ctx)
    };
    c.mul(&g).primitive()
}

/// Gcd of `b` with all coefficients of `a` in variable `v` (which `b` lacks).
fn gcd_through_coeffs(a: &Poly, v: usize, b: &Poly) -> Poly {
    let mut coeffs: Vec<Poly> = a.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = b.clone();
    for c in &coeffs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Content of `p` viewed as a polynomial in `v`.
pub(crate) fn content_in(p: &Poly, v: usize) -> Poly {
    let mut coeffs: Vec<Poly> = p.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.len());
    let mut it = coeffs.into_iter();
    let mut g = match it.next() {
        Some(c) => c.primitive(),
        None => return Poly::zero(p.ctx()),
    };
    for c in it {
        if g.is_one() {
            break;
        }
        g = gcd(&g, &c);
    }
    g
}

const SAMPLE_POINTS: [i64; 12] = [2, 3, -2, 5, 7, -3, 11, 13, -5, 17, 19, -7];

/// Degree in `v` of the gcd of univariate images at a point where both
/// leading coefficients survive. Bounds the true gcd degree from above.
fn image_gcd_degree(a: &Poly, b: &Poly, v: usize) -> Option<usize> {
    let n = a.ctx().nvars();
    let da = a.degree_in_var(v) as usize;
    let db = b.degree_in_var(v) as usize;
    for attempt in 0..4 {
        let point: Vec<Q> = (0..n)
            .map(|i| q_int(SAMPLE_POINTS[(i * 5 + attempt * 7) % SAMPLE_POINTS.len()]))
            .collect();
        let ia = a.eval_to_univariate(v, &point);
        let ib = b.eval_to_univariate(v, &point);
        if ia[da].is_zero() || ib[db].is_zero() {
            continue;
        }
        let g = uni_gcd(ia, ib);
        return Some(g.len() - 1);
    }
    None
}

fn trim(p: &mut Vec<Q>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn uni_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let k = &r[dr] / lb;
        if !k.is_zero() {
            for j in 0..=db {
                let t = &k * &b[j];
                r[dr - db + j] -= t;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn uni_gcd(mut a: Vec<Q>, mut b: Vec<Q>) -> Vec<Q> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &l;
        }
    }
    a
}

fn univariate_gcd(a: &Poly, b: &Poly, v: usize) -> Poly {
    let ctx = a.ctx();
    let dense = |p: &Poly| -> Vec<Q> {
        p.coeffs_in(v)
            .into_iter()
            .map(|c| c.as_constant().expect("univariate"))
            .collect()
    };
    let g = uni_gcd(dense(a), dense(b));
    let coeffs: Vec<Poly> = g.into_iter().map(|c| Poly::constant(ctx, c)).collect();
    Poly::from_coeffs_in(ctx, v, &coeffs).primitive()
}

type Uni = Vec<Poly>;

fn uni_trim(p: &mut Uni) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Pseudo-remainder of `a` by `b` in the main variable.
fn prem(a: &Uni, b: &Uni) -> Uni {
    let n = b.len() - 1;
    let lb = &b[n];
    let mut r = a.clone();
    let mut e = (a.len() - 1 - n + 1) as u32;
    while r.len() > n && !r.is_empty() {
        let d = r.len() - 1;
        let lr = r[d].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for j in 0..=n {
            let t = lr.mul(&b[j]);
            r[j + d - n] = r[j + d - n].sub(&t);
        }
        r.pop();
        uni_trim(&mut r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let k = lb.pow(e);
        for c in r.iter_mut() {
            *c = c.mul(&k);
        }
    }
    r
}

fn subresultant_gcd(a: &Poly, b: &Poly, v: usize) -> Poly {
    let ctx = a.ctx();
    let mut x: Uni = a.coeffs_in(v);
    let mut y: Uni = b.coeffs_in(v);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    let mut g = Poly::one(ctx);
    let mut h = Poly::one(ctx);
    loop {
        let delta = (x.len() - y.len()) as u32;
        let r = prem(&x, &y);
        if r.is_empty() {
            return Poly::from_coeffs_in(ctx, v, &y);
        }
        if r.len() == 1 {
            return Poly::one(ctx);
        }
        let divisor = g.mul(&h.pow(delta));
        let r: Uni = r
            .iter()
            .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
            .collect();
        x = y;
        y = r;
        g = x.last().expect("nonzero").clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g
                .pow(d)
                .div_exact(&h.pow(d - 1))
                .expect("subresultant division is exact"),
        };
    }
}
