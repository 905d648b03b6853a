mod common;

use common::*;
use leafnorm::multivector::*;
use leafnorm::symbolic::{Ctx, RatFunc};
use proptest::prelude::*;

fn d(c: &Ctx, i: usize) -> Multivector {
    Multivector::basis(c, &[i])
}

fn dx(c: &Ctx, i: usize) -> DiffForm {
    DiffForm::basis(c, &[i])
}

#[test]
fn schouten_examples() {
    let c = ctx(&["x1", "x2"], &["y1"]);
    let x1 = rf(&c, "x1");
    let f = Multivector::scalar(x1.clone());
    let f2 = Multivector::scalar(x1.mul(&x1));
    assert!(schouten(&f, &f2).unwrap().is_zero());
    let p = d(&c, 0).wedge(&d(&c, 1));
    let x = d(&c, 0).scale(&x1);
    // Leibniz oracle: [X ^ Y, Z] = X ^ [Y, Z] + [X, Z] ^ Y for vector fields
    // with the sign of our convention: [P, Z] = -[Z, P] for P of degree 2.
    let yz = schouten(&d(&c, 1), &x).unwrap();
    let xz = schouten(&d(&c, 0), &x).unwrap();
    let oracle = d(&c, 0).wedge(&yz).add(&xz.wedge(&d(&c, 1)));
    assert_eq!(schouten(&p, &x).unwrap(), oracle);
    assert_eq!(schouten(&p, &x).unwrap(), p);
    // Vector field on a function.
    assert_eq!(
        schouten(&x, &f2).unwrap(),
        Multivector::scalar(int(&c, 2).mul(&x1).mul(&x1))
    );

    let c3 = ctx(&[], &["y1", "y2", "y3"]);
    let pl = so3_lin(&c3, 0);
    assert!(schouten(&pl, &pl).unwrap().is_zero());
    assert!(is_poisson(&pl).unwrap().is_poisson);
    let mixed = p.add(&Multivector::scalar(x1.clone()));
    assert_eq!(schouten(&mixed, &x), Err(leafnorm::Error::NonHomogeneous));
}

#[test]
fn forms_examples() {
    let c = ctx(&["x1", "x2"], &["y1"]);
    let x1 = rf(&c, "x1");
    let w = dx(&c, 1).scale(&x1);
    assert_eq!(exterior_derivative(&w), dx(&c, 0).wedge(&dx(&c, 1)));
    let f = x1.mul(&rf(&c, "x2")).mul(&rf(&c, "y1"));
    assert!(exterior_derivative(&differential(&f)).is_zero());
    assert_eq!(lie_derivative(&d(&c, 0), &w).unwrap(), dx(&c, 1));
    let two = d(&c, 0).wedge(&d(&c, 1));
    assert!(matches!(
        lie_derivative(&two, &w),
        Err(leafnorm::Error::WrongDegree { .. })
    ));
}

#[test]
fn sharp_and_brackets() {
    let c = ctx(&["x1", "x2"], &["y1", "y2", "y3"]);
    let p = d(&c, 0).wedge(&d(&c, 1));
    assert_eq!(sharp(&p, &dx(&c, 0)).unwrap(), d(&c, 1));
    assert!(sharp(&p, &DiffForm::zero(&c)).unwrap().is_zero());
    let pl = so3_lin(&c, 2);
    let y = |a: usize| rf(&c, ["y1", "y2", "y3"][a]);
    // Direct contraction oracle: pi^#(dy1)(dy_b) = pi(dy1, dy_b) = c_{1b}^k y_k.
    let s = sharp(&pl, &dx(&c, 2)).unwrap();
    assert_eq!(s, d(&c, 3).scale(&y(2)).sub(&d(&c, 4).scale(&y(1))));
    assert_eq!(poisson_bracket(&p, &rf(&c, "x1"), &rf(&c, "x2")).unwrap(), int(&c, 1));
    assert_eq!(poisson_bracket(&pl, &y(0), &y(1)).unwrap(), y(2));
    let f = y(0).mul(&rf(&c, "x1"));
    assert!(poisson_bracket(&pl, &f, &f).unwrap().is_zero());
    assert_eq!(hamiltonian(&p, &rf(&c, "x1")).unwrap(), d(&c, 1));
    let df = differential(&f);
    assert!(cotangent_bracket(&pl, &df, &df).unwrap().is_zero());
    assert!(cotangent_bracket(&p, &dx(&c, 0), &dx(&c, 1)).unwrap().is_zero());
    assert_eq!(cotangent_bracket(&pl, &dx(&c, 2), &dx(&c, 3)).unwrap(), dx(&c, 4));
}

#[test]
fn poisson_examples() {
    let c = ctx(&["u", "v"], &["y1", "y2", "y3"]);
    let p = d(&c, 0).wedge(&d(&c, 1));
    assert!(is_poisson(&p).unwrap().is_poisson);
    let y = |a: usize| rf(&c, ["y1", "y2", "y3"][a]);
    let u = rf(&c, "u");
    let v = rf(&c, "v");
    let r2 = y(0).mul(&y(0)).add(&y(1).mul(&y(1))).add(&y(2).mul(&y(2)));
    let rho = int(&c, 1).add(&u.mul(&u)).add(&v.mul(&v));
    let coef = int(&c, 1).add(&r2).mul(&rho.mul(&rho)).scale(&q(1, 4));
    let pi = p.scale(&coef).add(&so3_lin(&c, 2));
    assert!(is_poisson(&pi).unwrap().is_poisson);
    // Not every bivector is Poisson.
    let bad = p.scale(&y(0)).add(&d(&c, 2).wedge(&d(&c, 0)).scale(&u));
    assert!(!is_poisson(&bad).unwrap().is_poisson);
}

fn graded(a: usize, b: usize) -> bool {
    // (-1)^{(a-1)(b-1)} is -1 exactly when both shifted degrees are odd.
    a.is_multiple_of(2) && b.is_multiple_of(2)
}

proptest! {
    #![proptest_config(cases(50))]

    #[test]
    fn schouten_graded_antisymmetry_and_jacobi(seed in any::<u64>(), a in 0usize..3, b in 0usize..3, k in 0usize..3) {
        let mut r = rng(seed);
        let c = ctx(&["x1", "x2"], &["y1"]);
        let p = rand_mv(&mut r, &c, a, 2);
        let qq = rand_mv(&mut r, &c, b, 2);
        let rr = rand_mv(&mut r, &c, k, 2);
        let pq = schouten(&p, &qq).unwrap();
        let qp = schouten(&qq, &p).unwrap();
        let s = if graded(a, b) { qp.clone() } else { qp.neg() };
        prop_assert_eq!(pq.clone(), s);
        // [P,[Q,R]] = [[P,Q],R] + (-1)^{(a-1)(b-1)} [Q,[P,R]]
        let lhs = schouten(&p, &schouten(&qq, &rr).unwrap()).unwrap();
        let t1 = schouten(&pq, &rr).unwrap();
        let t2 = schouten(&qq, &schouten(&p, &rr).unwrap()).unwrap();
        let rhs = if graded(a, b) { t1.sub(&t2) } else { t1.add(&t2) };
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn schouten_leibniz(seed in any::<u64>(), a in 0usize..3, b in 0usize..3, k in 0usize..2) {
        let mut r = rng(seed);
        let c = ctx(&["x1"], &["y1", "y2"]);
        let p = rand_mv(&mut r, &c, a, 2);
        let qq = rand_mv(&mut r, &c, b, 2);
        let rr = rand_mv(&mut r, &c, k, 2);
        // [P, Q ^ R] = [P, Q] ^ R + (-1)^{(a-1) b} Q ^ [P, R]
        let lhs = schouten(&p, &qq.wedge(&rr)).unwrap();
        let t1 = schouten(&p, &qq).unwrap().wedge(&rr);
        let t2 = qq.wedge(&schouten(&p, &rr).unwrap());
        let odd = (a + 1) * b % 2 == 1;
        let rhs = if odd { t1.sub(&t2) } else { t1.add(&t2) };
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn cartan_calculus(seed in any::<u64>(), k in 0usize..3) {
        let mut r = rng(seed);
        let c = ctx(&["x1", "x2"], &["y1"]);
        let x = rand_mv(&mut r, &c, 1, 2);
        let w: DiffForm = rand_alt(&mut r, &c, k, 2, 3);
        let cartan = interior(&x, &exterior_derivative(&w)).unwrap()
            .add(&exterior_derivative(&interior(&x, &w).unwrap()));
        prop_assert_eq!(lie_derivative(&x, &w).unwrap(), cartan);
        prop_assert!(exterior_derivative(&exterior_derivative(&w)).is_zero());
    }

    #[test]
    fn bracket_identities_on_poisson_catalog(seed in any::<u64>(), which in 0usize..3) {
        let mut r = rng(seed);
        let c = ctx(&["x1", "x2"], &["y1", "y2", "y3"]);
        let sym = d(&c, 0).wedge(&d(&c, 1));
        let pi = match which {
            0 => sym.scale(&int(&c, 3)).add(&d(&c, 2).wedge(&d(&c, 3))),
            1 => so3_lin(&c, 2),
            _ => sym.add(&so3_lin(&c, 2)),
        };
        let f = rand_rf(&mut r, &c, 2);
        let g = rand_rf(&mut r, &c, 2);
        let h = rand_rf(&mut r, &c, 2);
        let br = |a: &RatFunc, b: &RatFunc| poisson_bracket(&pi, a, b).unwrap();
        let jac = br(&f, &br(&g, &h)).add(&br(&g, &br(&h, &f))).add(&br(&h, &br(&f, &g)));
        prop_assert!(jac.is_zero());
        prop_assert_eq!(br(&f, &g), br(&g, &f).neg());
        let lhs = cotangent_bracket(&pi, &differential(&f), &differential(&g)).unwrap();
        prop_assert_eq!(lhs, differential(&br(&f, &g)));
        prop_assert_eq!(hamiltonian(&pi, &f).unwrap(), schouten(&pi, &Multivector::scalar(f.clone())).unwrap().neg());
    }
}
