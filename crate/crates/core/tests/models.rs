#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use leafnorm::models::*;
use leafnorm::multivector::{differential, is_poisson, Blade, DiffForm, Multivector};
use leafnorm::omega::jet_n;
use leafnorm::symbolic::{ChartContext, MatrixRF, RatFunc, Q};
use leafnorm::vorobjev::*;
use leafnorm::Error;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn poisson(m: &Multivector) -> bool {
    is_poisson(m).unwrap().is_poisson
}

#[test]
fn linear_poisson_examples() {
    assert!(linear_poisson(&LieAlgebraData::abelian(3)).is_zero());
    let so3 = linear_poisson(&LieAlgebraData::so3());
    let c = so3.ctx().clone();
    assert_eq!(so3, so3_lin(&c, 0));
    assert_eq!(so3.to_string(), "y3*d/dy1^d/dy2-y2*d/dy1^d/dy3+y1*d/dy2^d/dy3");
    assert!(poisson(&so3));
    let h = linear_poisson(&LieAlgebraData::heisenberg3());
    assert_eq!(h, Multivector::basis(h.ctx(), &[0, 1]).scale(&rf(h.ctx(), "y3")));
    assert!(poisson(&h));
    assert!(poisson(&linear_poisson(&LieAlgebraData::aff1())));
    let bad = LieAlgebraData::new(3, &[(0, 1, 2, q(1, 1)), (1, 2, 1, q(1, 1))]);
    assert!(matches!(bad, Err(Error::JacobiFailed)));
}

#[test]
fn product_examples() {
    let c = ctx(&["x1", "x2"], &["y1", "y2", "y3"]);
    let base = Multivector::basis(&c, &[0, 1]);
    let lin = linear_poisson_in(&LieAlgebraData::so3(), &c).unwrap();
    assert!(poisson(&product_poisson(&base, &lin).unwrap()));
    assert!(poisson(&product_poisson(&base, &Multivector::zero(&c)).unwrap()));
    let coupled = Multivector::basis(&c, &[2, 3]).scale(&rf(&c, "x1"));
    assert!(matches!(product_poisson(&base, &coupled), Err(Error::VariableOverlap)));
    assert!(matches!(product_poisson(&base, &base), Err(Error::VariableOverlap)));
}

/// Pull back `X dY^dZ + Y dZ^dX + Z dX^dY` along inverse stereographic
/// projection.
fn stereographic_area(c: &leafnorm::symbolic::Ctx) -> DiffForm {
    let (u, v) = (rf(c, "u"), rf(c, "v"));
    let one = int(c, 1);
    let den = one.add(&u.mul(&u)).add(&v.mul(&v));
    let x = u.scale(&q(2, 1)).checked_div(&den).unwrap();
    let y = v.scale(&q(2, 1)).checked_div(&den).unwrap();
    let z = u.mul(&u).add(&v.mul(&v)).sub(&one).checked_div(&den).unwrap().neg();
    let (dx, dy, dz) = (differential(&x), differential(&y), differential(&z));
    dy.wedge(&dz)
        .scale(&x)
        .add(&dz.wedge(&dx).scale(&y))
        .add(&dx.wedge(&dy).scale(&z))
}

#[test]
fn sphere_examples() {
    let pi0 = sphere_example(false);
    let pi = sphere_example(true);
    let c = pi.ctx().clone();
    assert!(poisson(&pi0) && poisson(&pi));
    let area = sphere_area_form(&c);
    assert_eq!(stereographic_area(&c), area);

    let nd = is_horizontally_nondegenerate(&pi).unwrap();
    let conf = int(&c, 1)
        .add(&rf(&c, "u").pow(2).unwrap())
        .add(&rf(&c, "v").pow(2).unwrap());
    let a12 = int(&c, 1)
        .add(&radius_squared(&c))
        .mul(&conf.pow(2).unwrap())
        .scale(&q(1, 4));
    assert_eq!(nd.det, a12.mul(&a12));
    assert!(nd.at_zero_section);

    let g0 = decompose(&pi0).unwrap();
    let g = decompose(&pi).unwrap();
    assert_eq!(first_jet_model(&g0).unwrap(), g0);
    assert_eq!(first_jet_model(&g).unwrap(), g0);
    assert_eq!(leaf_check(&g).unwrap().omega_s, area);
    assert!(chain_map_residual(&pi, &Multivector::basis(&c, &[2]))
        .unwrap()
        .is_zero());
    assert!(structure_equations(&g).unwrap().all_zero());

    let path = moser_path(&g).unwrap();
    let ct = path.ctx().clone();
    let r2 = radius_squared(&ct);
    let t = path.t.clone();
    let factor = int(&ct, 1).sub(&t.mul(&r2).checked_div(&int(&ct, 1).add(&t.mul(&t).mul(&r2))).unwrap());
    let expect_f = leafnorm::omega::MixedElement::from_form(&sphere_area_form(&ct))
        .unwrap()
        .scale(&factor)
        .neg();
    assert_eq!(*path.gamma_t.f_part(), expect_f);
    assert_eq!(*path.gamma_t.v_part(), g0.v_part().embed(&ct).unwrap());
    assert!(path.is_dirac_path().unwrap());

    let gd = gamma_dot_1(&g).unwrap();
    assert!(!gd.is_zero());
    assert!(jet_n(&gd, 1).unwrap().is_zero());
    assert!(linearization_identity(&pi).unwrap().holds());
}

fn sphere_generators() -> MatrixRF {
    monodromy(&sphere_period_model(), None).unwrap()
}

#[test]
fn monodromy_examples() {
    let m = sphere_generators();
    assert_eq!(format_generators(&m), "(-2*r*PI/(1+r^2)^2, PI)");
    let at = monodromy(&sphere_period_model(), Some(&[q(1, 2)])).unwrap();
    assert_eq!(format_generators(&at), "(-16*PI/25, PI)");
    let d = lattice_discreteness(&at).unwrap();
    assert!(d.discrete);
    assert_eq!(d.rank, 1);
    assert_eq!(d.basis, vec![vec![q(1, 25)]]);
    assert!(matches!(lattice_discreteness(&m), Err(Error::NonRationalInput)));

    let ctx = PeriodModel::context(&["t"]).unwrap();
    let (t, pi) = (RatFunc::var(&ctx, 0), PeriodModel::pi(&ctx).unwrap());
    let constant = PeriodModel::new(&ctx, vec![pi.clone(), pi.scale(&q(2, 1))]).unwrap();
    assert!(monodromy(&constant, None).unwrap().is_zero());
    let poly = PeriodModel::new(&ctx, vec![pi.mul(&t), pi.mul(&t).mul(&t)]).unwrap();
    assert_eq!(
        format_generators(&monodromy(&poly, Some(&[q(1, 1)])).unwrap()),
        "(PI, 2*PI)"
    );
    let singular = PeriodModel::new(&ctx, vec![pi.checked_div(&t).unwrap()]).unwrap();
    assert!(matches!(
        monodromy(&singular, Some(&[q(0, 1)])),
        Err(Error::SingularPoint)
    ));
    assert!(PeriodModel::new(&ctx, vec![t.clone()]).is_err());
    assert!(PeriodModel::new(&ctx, vec![pi.mul(&pi)]).is_err());
}

#[test]
fn lattice_examples() {
    let ctx = PeriodModel::context(&["t"]).unwrap();
    let pi = PeriodModel::pi(&ctx).unwrap();
    let gens = MatrixRF::from_fn(&ctx, 2, 1, |j, _| if j == 0 { pi.clone() } else { pi.scale(&q(3, 7)) });
    let d = lattice_discreteness(&gens).unwrap();
    assert_eq!((d.discrete, d.rank), (true, 1));
    assert_eq!(d.basis, vec![vec![q(1, 7)]]);
    let zero = MatrixRF::zeros(&ctx, 1, 1);
    assert_eq!(lattice_discreteness(&zero).unwrap().rank, 0);
}

#[test]
fn ratio_examples() {
    let checks = ratio_constancy(&sphere_period_model()).unwrap();
    assert_eq!(checks.len(), 1);
    assert!(checks[0].obstruction());
    let c = sphere_period_model().ctx().clone();
    let r = RatFunc::var(&c, 0);
    let expect = r
        .scale(&q(-2, 1))
        .checked_div(&int(&c, 1).add(&r.mul(&r)).pow(2).unwrap())
        .unwrap();
    assert_eq!(checks[0].ratio, Some(expect));

    let ctx = PeriodModel::context(&["t"]).unwrap();
    let (t, pi) = (RatFunc::var(&ctx, 0), PeriodModel::pi(&ctx).unwrap());
    let prop = PeriodModel::new(&ctx, vec![pi.mul(&t), pi.mul(&t).scale(&q(2, 1))]).unwrap();
    let checks = ratio_constancy(&prop).unwrap();
    assert!(checks[0].constant && !checks[0].obstruction());
    assert_eq!(checks[0].ratio, Some(RatFunc::constant(&ctx, q(1, 2))));
    let flat_last = PeriodModel::new(&ctx, vec![pi.mul(&t), pi.clone()]).unwrap();
    assert!(matches!(ratio_constancy(&flat_last), Err(Error::ZeroGenerator)));
}

#[test]
fn integer_identity_examples() {
    let c = PeriodModel::context(&["r"]).unwrap();
    let r = RatFunc::var(&c, 0);
    let one = int(&c, 1);
    let d = one.add(&r.mul(&r));
    let f = one.checked_div(&d).unwrap();
    assert_eq!(
        integer_affine_identity(&f, &[one.clone(), r.checked_div(&d).unwrap()]).unwrap(),
        None
    );
    let lin = int(&c, 3).add(&r.scale(&q(2, 1)));
    assert_eq!(
        integer_affine_identity(&lin, &[one.clone(), r.clone()]).unwrap(),
        Some(vec![BigInt::from(3), BigInt::from(2)])
    );
    assert_eq!(
        integer_affine_identity(&r.scale(&q(1, 2)), std::slice::from_ref(&r)).unwrap(),
        None
    );
}

#[test]
fn affine_examples() {
    let affine = regular_model(&[q(1, 1)], &[vec![q(1, 1), q(0, 1)]], None).unwrap();
    assert!(affine_in_params(&affine));
    let deformed = regular_model(&[q(1, 1)], &[vec![q(1, 1), q(0, 1)]], Some(&[q(1, 1)])).unwrap();
    assert!(!affine_in_params(&deformed));
    let ctx = PeriodModel::context(&["t"]).unwrap();
    let pi = PeriodModel::pi(&ctx).unwrap();
    assert!(affine_in_params(&PeriodModel::new(&ctx, vec![pi]).unwrap()));
    assert!(!affine_in_params(&sphere_period_model()));
}

fn structure_bivector(c: &[Vec<Vec<Q>>]) -> Multivector {
    let n = c.len();
    let names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let ctx = ChartContext::new::<String>(&[], &names, &[]).unwrap();
    let mut out = Multivector::zero(&ctx);
    for a in 0..n {
        for b in a + 1..n {
            let coef = (0..n).fold(RatFunc::zero(&ctx), |acc, k| {
                acc.add(&RatFunc::var(&ctx, k).scale(&c[k][a][b]))
            });
            out.add_term(Blade::from_indices(&[a, b]), &coef);
        }
    }
    out
}

proptest! {
    #![proptest_config(cases(40))]

    #[test]
    fn lie_jacobi_iff_poisson(seed in any::<u64>(), dim in 2usize..4) {
        let mut r = rng(seed);
        let mut entries = Vec::new();
        let mut c = vec![vec![vec![q(0, 1); dim]; dim]; dim];
        for a in 0..dim {
            for b in a + 1..dim {
                for k in 0..dim {
                    if r.gen_bool(0.35) {
                        let v = q(r.gen_range(-2..3), 1);
                        c[k][a][b] = v.clone();
                        c[k][b][a] = -v.clone();
                        entries.push((a, b, k, v));
                    }
                }
            }
        }
        let manual = structure_bivector(&c);
        match LieAlgebraData::new(dim, &entries) {
            Ok(g) => {
                prop_assert!(poisson(&manual));
                let lp = linear_poisson(&g);
                prop_assert_eq!(lp.to_string(), manual.to_string());
            }
            Err(e) => {
                prop_assert!(matches!(e, Error::JacobiFailed));
                prop_assert!(!poisson(&manual));
            }
        }
    }

    #[test]
    fn monodromy_commutes_with_evaluation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ctx = PeriodModel::context(&["t1", "t2"]).unwrap();
        let pi = PeriodModel::pi(&ctx).unwrap();
        let vars = [0usize, 1];
        let periods: Vec<RatFunc> = (0..2)
            .map(|_| RatFunc::from_poly(rand_poly_in(&mut r, &ctx, &vars, 3, 3)).add(&int(&ctx, 1)).mul(&pi))
            .collect();
        let Ok(model) = PeriodModel::new(&ctx, periods.clone()) else { return Ok(()) };
        let point = [q(r.gen_range(-3..4), r.gen_range(1..4)), q(r.gen_range(-3..4), r.gen_range(1..4))];
        let at = monodromy(&model, Some(&point)).unwrap();
        // Oracle: linear coefficient of P(point + s e_i) in s.
        let sctx = ChartContext::new::<&str>(&[], &[], &["t1", "t2", "PI", "s"]).unwrap();
        let s = RatFunc::var(&sctx, 3);
        for (j, p) in periods.iter().enumerate() {
            let p = p.embed(&sctx).unwrap();
            for i in 0..2 {
                let mut shifted = p.clone();
                for (v, x) in point.iter().enumerate() {
                    let val = RatFunc::constant(&sctx, x.clone());
                    let val = if v == i { val.add(&s) } else { val };
                    shifted = shifted.subst(v, &val).unwrap();
                }
                let lin = shifted.as_poly().unwrap().coeffs_in(3).get(1).cloned();
                let lin = lin.map(RatFunc::from_poly).unwrap_or_else(|| RatFunc::zero(&sctx));
                prop_assert_eq!(at.get(j, i).embed(&sctx).unwrap(), lin);
            }
        }
    }

    #[test]
    fn regular_monodromy_is_omega_periods(seed in any::<u64>(), b in 1usize..3, nq in 1usize..3) {
        let mut r = rng(seed);
        let mut rq = || q(r.gen_range(-5..6), r.gen_range(1..5));
        let base: Vec<Q> = (0..b).map(|_| rq()).collect();
        let omega: Vec<Vec<Q>> = (0..b).map(|_| (0..nq).map(|_| rq()).collect()).collect();
        let Ok(m) = regular_model(&base, &omega, None) else { return Ok(()) };
        let mono = monodromy(&m, None).unwrap();
        let pi = PeriodModel::pi(m.ctx()).unwrap();
        for j in 0..b {
            for i in 0..nq {
                prop_assert_eq!(mono.get(j, i).clone(), pi.scale(&omega[j][i]));
            }
        }
        prop_assert!(affine_in_params(&m));
    }

    #[test]
    fn integer_identity_matches_search(seed in any::<u64>(), n in 1usize..3, feasible in any::<bool>()) {
        let mut r = rng(seed);
        let c = PeriodModel::context(&["r"]).unwrap();
        let basis: Vec<RatFunc> = (0..n)
            .map(|_| {
                let num = rand_poly_in(&mut r, &c, &[0], 2, 2);
                let s = rand_poly_in(&mut r, &c, &[0], 1, 2);
                RatFunc::new(num, leafnorm::symbolic::Poly::one(&c).add(&s.mul(&s))).unwrap()
            })
            .collect();
        let target: Vec<i64> = (0..n).map(|_| r.gen_range(-4..5)).collect();
        let mut f = basis.iter().zip(&target).fold(RatFunc::zero(&c), |acc, (g, m)| acc.add(&g.scale(&q(*m, 1))));
        if !feasible {
            f = f.add(&basis[0].scale(&q(1, 2)));
        }
        let got = integer_affine_identity(&f, &basis).unwrap();
        if let Some(m) = &got {
            let rebuilt = basis.iter().zip(m).fold(RatFunc::zero(&c), |acc, (g, k)| acc.add(&g.scale(&Q::from_integer(k.clone()))));
            prop_assert_eq!(rebuilt, f.clone());
        }
        let mut found = false;
        let mut idx = vec![-10i64; n];
        'outer: loop {
            let s = basis.iter().zip(&idx).fold(RatFunc::zero(&c), |acc, (g, k)| acc.add(&g.scale(&q(*k, 1))));
            if s == f {
                found = true;
                break;
            }
            for slot in idx.iter_mut() {
                *slot += 1;
                if *slot <= 10 {
                    continue 'outer;
                }
                *slot = -10;
            }
            break;
        }
        prop_assert_eq!(got.is_some(), found);
    }
}
