//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! every comparison is exact equality of rational functions.

mod common;

use common::*;
use leafnorm::models::*;
use leafnorm::multivector::{
    exterior_derivative, interior, is_poisson, lie_derivative, schouten, Blade, DiffForm, Multivector,
};
use leafnorm::omega::*;
use leafnorm::symbolic::{ChartContext, Ctx, MatrixRF, RatFunc};
use leafnorm::vorobjev::*;
use rand::Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Process;
use std::time::{Duration, Instant};

fn poisson(m: &Multivector) -> bool {
    is_poisson(m).unwrap().is_poisson
}

fn within(start: Instant, limit: Duration, what: &str) {
    let took = start.elapsed();
    assert!(took < limit, "{what} took {took:?}, limit {limit:?}");
}

fn total_degree(f: &RatFunc) -> u32 {
    f.num().total_degree().max(f.den().total_degree())
}

fn max_degree(m: &Multivector) -> u32 {
    m.terms().values().map(total_degree).max().unwrap_or(0)
}

// Randomized catalog: p = 2, q in {1, 2}, coefficient degree <= 2.

fn chart(q: usize) -> Ctx {
    let fiber = ["y1", "y2"];
    ctx(&["x1", "x2"], &fiber[..q])
}

/// `a(x) dx1^dx2 + b(y) dy1^dy2` moved by two linear shears; Poisson.
fn low_degree_poisson(seed: u64, q: usize) -> Multivector {
    let mut r = rng(seed);
    let c = chart(q);
    let xs: Vec<usize> = (0..2).map(|i| c.base_var(i)).collect();
    let ys: Vec<usize> = (0..q).map(|a| c.fiber_var(a)).collect();
    let a0 = x_poly(&mut r, &c, 2);
    let a = a0
        .sub(&RatFunc::constant(
            &c,
            a0.num().eval(&vec![Default::default(); c.nvars()]),
        ))
        .add(&int(&c, r.gen_range(1..4)));
    let mut theta = Multivector::basis(&c, &[0, 1]).scale(&a);
    if q == 2 {
        theta =
            theta.add(&Multivector::basis(&c, &[2, 3]).scale(&RatFunc::from_poly(rand_poly_in(&mut r, &c, &ys, 2, 3))));
    }
    let l = RatFunc::from_poly(rand_poly_in(&mut r, &c, &ys, 1, 2));
    let m = RatFunc::from_poly(rand_poly_in(&mut r, &c, &xs, 1, 2));
    shear(&shear(&theta, 0, &l), 2, &m)
}

/// Horizontally nondegenerate and not Poisson.
fn low_degree_generic(seed: u64, q: usize) -> Multivector {
    for s in seed.. {
        let mut r = rng(s);
        let c = chart(q);
        let theta = rand_mv(&mut r, &c, 2, 2).add(&Multivector::basis(&c, &[0, 1]));
        if is_horizontally_nondegenerate(&theta).unwrap().nondegenerate && !poisson(&theta) {
            return theta;
        }
    }
    unreachable!()
}

fn catalog() -> Vec<(Multivector, bool)> {
    let mut out = Vec::new();
    for seed in 0..16u64 {
        out.push((low_degree_poisson(seed, 1 + (seed as usize) % 2), true));
    }
    for seed in 0..8u64 {
        out.push((low_degree_generic(1000 * (seed + 1), 1 + (seed as usize) % 2), false));
    }
    out
}

fn criterion_1() -> String {
    let c = ctx(&["x1", "x2"], &[]);
    let so3 = linear_poisson(&LieAlgebraData::so3());
    let heis = linear_poisson(&LieAlgebraData::heisenberg3());
    let cases = [
        ("dx1^dx2", Multivector::basis(&c, &[0, 1])),
        ("so(3)", so3),
        ("heisenberg", heis),
        ("product", sphere_example(false)),
        ("deformed sphere", sphere_example(true)),
    ];
    for (name, pi) in &cases {
        let start = Instant::now();
        let check = is_poisson(pi).unwrap();
        assert!(
            check.is_poisson && check.residual.is_zero(),
            "{name}: residual {}",
            check.residual
        );
        within(start, Duration::from_secs(10), name);
    }
    format!("{} structures Poisson", cases.len())
}

fn criterion_2(set: &[(Multivector, bool)]) -> String {
    let start = Instant::now();
    let mut non_poisson = 0;
    for (theta, expected) in set {
        assert!(max_degree(theta) <= 2, "catalog degree {}", max_degree(theta));
        assert!(theta.ctx().p() <= 2 && theta.ctx().q() <= 2);
        assert!(is_horizontally_nondegenerate(theta).unwrap().nondegenerate);
        let p = poisson(theta);
        assert_eq!(p, *expected);
        non_poisson += usize::from(!p);
        let g = decompose(theta).unwrap();
        let sq = g.self_bracket().unwrap();
        let s = structure_equations(&g).unwrap();
        assert_eq!(sq.is_zero(), p);
        assert_eq!(s.all_zero(), p);
        for b in sq.bidegrees() {
            assert!(matches!(b, (0, 3) | (1, 2) | (2, 1) | (3, 0)), "bidegree {b:?}");
        }
        assert_eq!(sq.part(0, 3), s.vertical_jacobi);
        assert_eq!(sq.part(1, 2), s.parallel.scale_int(2));
        assert_eq!(sq.part(2, 1), s.curvature.scale_int(2));
        assert_eq!(sq.part(3, 0), s.closed.scale_int(2));
    }
    assert!(set.len() >= 20 && non_poisson >= 5);
    within(start, Duration::from_secs(60), "equivalence suite");
    format!("{} bivectors, {non_poisson} non-Poisson", set.len())
}

fn criterion_3(set: &[(Multivector, bool)]) -> String {
    for (theta, _) in set {
        let g = decompose(theta).unwrap();
        let back = assemble(&g).unwrap();
        assert_eq!(&back, theta);
        assert_eq!(decompose(&back).unwrap(), g);
    }
    format!("{} round trips", set.len())
}

fn criterion_4(set: &[(Multivector, bool)]) -> String {
    let start = Instant::now();
    let mut n = 0;
    let entries: Vec<&Multivector> = set.iter().filter(|(_, p)| *p).map(|(t, _)| t).take(6).collect();
    assert!(entries.len() >= 5);
    for (i, theta) in entries.iter().enumerate() {
        let mut r = rng(7000 + i as u64);
        for k in 0..3 {
            for _ in 0..2 {
                let u = rand_mv(&mut r, theta.ctx(), k, 1);
                let res = chain_map_residual(theta, &u).unwrap();
                assert!(res.is_zero(), "residual {res}");
                n += 1;
            }
        }
    }
    within(start, Duration::from_secs(60), "chain map");
    format!("{} Poisson entries, {n} elements", entries.len())
}

fn criterion_5() -> String {
    let pi0 = decompose(&sphere_example(false)).unwrap();
    for deformed in [false, true] {
        let g = decompose(&sphere_example(deformed)).unwrap();
        assert_eq!(first_jet_model(&g).unwrap(), pi0);
    }
    "deformed and undeformed sphere".into()
}

fn criterion_6() -> String {
    let g = decompose(&sphere_example(true)).unwrap();
    let c = g.ctx().clone();
    let path = moser_path(&g).unwrap();
    assert!(path.gamma_t.self_bracket().unwrap().is_zero());
    assert_eq!(path.at_in(&q(1, 1), &c).unwrap(), g.to_mixed());
    assert_eq!(path.at_in(&q(0, 1), &c).unwrap(), jet_n(&g.to_mixed(), 1).unwrap());
    let gd = gamma_dot_1(&g).unwrap().embed(path.ctx()).unwrap();
    let lhs = dilation(&gd, &path.t).unwrap().scale(&path.t.inv().unwrap());
    assert_eq!(lhs, path.velocity_formal().unwrap());
    "[g_t, g_t] = 0, endpoints, auxiliary identity".into()
}

fn criterion_7() -> String {
    let theta = sphere_example(true);
    let g = decompose(&theta).unwrap();
    let gd = gamma_dot_1(&g).unwrap();
    assert!(jet_n(&gd, 1).unwrap().is_zero());
    assert!(ltimes_bracket(&g.to_mixed(), &gd).unwrap().is_zero());
    let id = linearization_identity(&theta).unwrap();
    assert_eq!(id.gamma_dot, gd);
    assert!(id.cocycle.closed);
    assert!(id.exact_residual.is_zero(), "exact part {}", id.exact_residual);
    assert!(
        id.coboundary_residual.is_zero(),
        "coboundary part {}",
        id.coboundary_residual
    );
    // The remaining term is a nonzero coboundary: the classes agree, the elements do not.
    let e = euler(g.ctx()).to_multivector().unwrap();
    assert!(!schouten(&theta, &e).unwrap().is_zero());
    "j1 = 0, [g, g1] = 0, tau^-1 identity up to the coboundary -[pi, E]".into()
}

fn criterion_8() -> String {
    let m = sphere_period_model();
    let mono = monodromy(&m, None).unwrap();
    let ctx = m.ctx().clone();
    let r = RatFunc::var_named(&ctx, "r").unwrap();
    let pi = PeriodModel::pi(&ctx).unwrap();
    let one_r2 = int(&ctx, 1).add(&r.mul(&r));
    let g1 = pi.mul(&r).scale(&q(-2, 1)).checked_div(&one_r2.mul(&one_r2)).unwrap();
    let expect = MatrixRF::from_fn(&ctx, 2, 1, |j, _| if j == 0 { g1.clone() } else { pi.clone() });
    assert_eq!(mono, expect);
    assert_eq!(format_generators(&mono), "(-2*r*PI/(1+r^2)^2, PI)");
    let ratios = ratio_constancy(&m).unwrap();
    assert_eq!(ratios.len(), 1);
    assert!(ratios[0].obstruction());
    "(-2*r*PI/(1+r^2)^2, PI), ratio non-constant".into()
}

fn criterion_9() -> String {
    let ctx = ChartContext::new::<&str>(&[], &[], &["r"]).unwrap();
    let r = RatFunc::var(&ctx, 0);
    let den = int(&ctx, 1).add(&r.mul(&r));
    let f = den.inv().unwrap();
    let basis = [int(&ctx, 1), r.checked_div(&den).unwrap()];
    assert_eq!(integer_affine_identity(&f, &basis).unwrap(), None);
    "infeasible".into()
}

fn criterion_10() -> String {
    let base = [q(1, 1), q(0, 1)];
    let omega = [vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
    let affine = regular_model(&base, &omega, None).unwrap();
    let deformed = regular_model(&base, &omega, Some(&[q(1, 1), q(0, 1)])).unwrap();
    assert!(affine_in_params(&affine));
    assert!(!affine_in_params(&deformed));
    "affine family true, t1^2 family false".into()
}

// Criterion 11 suites.

const INSTANCES: u64 = 50;

fn parity(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

fn lie(u: &MixedElement) -> i64 {
    u.lie_degree().unwrap().unwrap_or(0)
}

fn schouten_suite(seed: u64) {
    let mut r = rng(seed);
    let c = ctx(&["x1", "x2"], &["y1"]);
    let (a, b, k) = (r.gen_range(0..3), r.gen_range(0..3), r.gen_range(0..3));
    let (p, qq, rr) = (
        rand_mv(&mut r, &c, a, 2),
        rand_mv(&mut r, &c, b, 2),
        rand_mv(&mut r, &c, k, 2),
    );
    let both_even = a % 2 == 0 && b % 2 == 0;
    let pq = schouten(&p, &qq).unwrap();
    let qp = schouten(&qq, &p).unwrap();
    assert_eq!(pq, if both_even { qp } else { qp.neg() });
    let lhs = schouten(&p, &schouten(&qq, &rr).unwrap()).unwrap();
    let t1 = schouten(&pq, &rr).unwrap();
    let t2 = schouten(&qq, &schouten(&p, &rr).unwrap()).unwrap();
    assert_eq!(lhs, if both_even { t1.sub(&t2) } else { t1.add(&t2) });
}

fn ltimes_suite(seed: u64) {
    let mut r = rng(seed);
    let c = ctx(&["x1", "x2"], &["y1", "y2"]);
    let (a, b, k) = (r.gen_range(-1..3), r.gen_range(-1..3), r.gen_range(-1..2));
    let u = rand_tilde(&mut r, &c, a, 2, 3, true);
    let v = rand_tilde(&mut r, &c, b, 2, 3, true);
    let w = rand_tilde(&mut r, &c, k, 2, 2, true);
    let odd = parity(lie(&u) * lie(&v));
    let uv = ltimes_bracket(&u, &v).unwrap();
    let vu = ltimes_bracket(&v, &u).unwrap();
    assert_eq!(uv, if odd { vu } else { vu.neg() });
    let lhs = ltimes_bracket(&u, &ltimes_bracket(&v, &w).unwrap()).unwrap();
    let t1 = ltimes_bracket(&uv, &w).unwrap();
    let t2 = ltimes_bracket(&v, &ltimes_bracket(&u, &w).unwrap()).unwrap();
    assert_eq!(lhs, if odd { t1.sub(&t2) } else { t1.add(&t2) });
}

fn newton_suite(seed: u64) {
    let mut r = rng(seed);
    let c = ctx(&["x1", "x2"], &["y1", "y2"]);
    let (a, b, l) = (r.gen_range(-1..3), r.gen_range(-1..3), r.gen_range(0..4usize));
    let u = rand_tilde(&mut r, &c, a, 3, 3, true);
    let v = rand_tilde(&mut r, &c, b, 3, 3, true);
    let lhs = ds_n(&ltimes_bracket(&u, &v).unwrap(), l).unwrap();
    let rhs = (0..=l + 1).fold(MixedElement::zero(&c), |acc, pp| {
        acc.add(&ltimes_bracket(&ds_n(&u, pp).unwrap(), &ds_n(&v, l + 1 - pp).unwrap()).unwrap())
    });
    assert_eq!(lhs, rhs);
}

fn base_form(r: &mut impl Rng, c: &Ctx, k: usize) -> DiffForm {
    let base: Vec<usize> = (0..c.p()).map(|i| c.base_var(i)).collect();
    let mut w = DiffForm::zero(c);
    for _ in 0..3 {
        let idx: Vec<usize> = (0..k).map(|_| r.gen_range(0..c.p())).collect();
        let b = Blade::from_indices(&idx);
        if b.len() == k {
            w.add_term(b, &RatFunc::from_poly(rand_poly_in(r, c, &base, 2, 2)));
        }
    }
    w
}

fn gamma_s_suite(seed: u64) {
    let mut r = rng(seed);
    let c = ctx(&["x1", "x2", "x3"], &["y1"]);
    let k = r.gen_range(0..3);
    let w = base_form(&mut r, &c, k);
    let lhs = ltimes_bracket(&gamma_s(&c), &MixedElement::from_form(&w).unwrap()).unwrap();
    assert_eq!(lhs, MixedElement::from_form(&exterior_derivative(&w)).unwrap());
}

fn centrality_suite(seed: u64) {
    let mut r = rng(seed);
    let c = ctx(&["x1", "x2"], &["y1", "y2"]);
    let (a, k) = (r.gen_range(0..3), r.gen_range(0..3));
    let mw = MixedElement::from_form(&base_form(&mut r, &c, k)).unwrap();
    // Forms on S commute with everything tangent to the fibers.
    let v = rand_tilde(&mut r, &c, a, 2, 3, false);
    assert!(ltimes_bracket(&v, &mw).unwrap().is_zero());
    // With horizontal terms the bracket is the Lie derivative along p_S(u).
    let u = rand_tilde(&mut r, &c, a, 2, 3, true);
    let w = mw.to_form().unwrap();
    let mut expect = MixedElement::zero(&c);
    for (key, coef) in u.p_s().terms() {
        let j = key.j.indices().next().unwrap();
        let alpha = DiffForm::from_terms(&c, [(key.i, coef.clone())]);
        let xj = Multivector::basis(&c, &[j]);
        let t1 = alpha.wedge(&lie_derivative(&xj, &w).unwrap());
        let t2 = exterior_derivative(&alpha).wedge(&interior(&xj, &w).unwrap());
        let l = if key.i.len() % 2 == 1 { t1.sub(&t2) } else { t1.add(&t2) };
        expect = expect.add(&MixedElement::from_form(&l).unwrap());
    }
    assert_eq!(ltimes_bracket(&u, &mw).unwrap(), expect);
}

fn dilation_suite(seed: u64) {
    let mut r = rng(seed);
    let c = ChartContext::new(&["x1", "x2"], &["y1", "y2"], &["t", "s"]).unwrap();
    let (t, s) = (RatFunc::var(&c, 0), RatFunc::var(&c, 1));
    let (a, b) = (r.gen_range(-1..3), r.gen_range(-1..3));
    let u = rand_tilde(&mut r, &c, a, 2, 3, true);
    let v = rand_tilde(&mut r, &c, b, 2, 3, true);
    let lhs = dilation(&ltimes_bracket(&u, &v).unwrap(), &t).unwrap();
    let rhs = ltimes_bracket(&dilation(&u, &t).unwrap(), &dilation(&v, &t).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(
        dilation(&dilation(&u, &s).unwrap(), &t).unwrap(),
        dilation(&u, &t.mul(&s)).unwrap()
    );
}

fn homogeneity_suite(seed: u64) {
    let mut r = rng(seed);
    let c = ChartContext::new(&["x1"], &["y1", "y2"], &["t"]).unwrap();
    let t = RatFunc::var(&c, 0);
    let (a, n) = (r.gen_range(-1..3), r.gen_range(0..4usize));
    let u = rand_tilde(&mut r, &c, a, 3, 3, true);
    let den = int(&c, 1).add(&rf(&c, "y1").mul(&rf(&c, "x1")));
    let u = u.filter(|k| k.j.is_empty()).scale(&den.inv().unwrap()).add(&u.p_s());
    let dn = ds_n(&u, n).unwrap();
    assert!(is_homogeneous(&dn, n).unwrap());
    assert_eq!(dilation(&dn, &t).unwrap(), dn.scale(&t.pow(n as i32 - 1).unwrap()));
}

fn differential_suite(seed: u64) {
    let g = decompose(&leaf_poisson(seed)).unwrap();
    let dl = graded_differential(&g).unwrap();
    let mut r = rng(seed ^ 0x31);
    let l = (seed % 3) as usize;
    let k = r.gen_range(-1..2);
    let u = gr_project(&rand_tilde(&mut r, g.ctx(), k, 2, 3, false), l).unwrap();
    assert!(dl.square(&u, l).unwrap().is_zero());
}

fn algebroid_suite(alg: &AlgebroidData, seed: u64) {
    let mut r = rng(seed);
    let c = alg.ctx().clone();
    let xs: Vec<usize> = (0..c.p()).map(|i| c.base_var(i)).collect();
    let mut section = || -> Vec<RatFunc> {
        (0..alg.rank())
            .map(|_| RatFunc::from_poly(rand_poly_in(&mut r, &c, &xs, 2, 2)))
            .collect()
    };
    let (a, b, d) = (section(), section(), section());
    let terms = [
        alg.bracket(&alg.bracket(&a, &b), &d),
        alg.bracket(&alg.bracket(&b, &d), &a),
        alg.bracket(&alg.bracket(&d, &a), &b),
    ];
    for m in 0..alg.rank() {
        let sum = terms.iter().fold(RatFunc::zero(&c), |acc, t| acc.add(&t[m]));
        assert!(sum.is_zero(), "jacobiator {sum}");
    }
    let ab = alg.bracket(&a, &b);
    let ba = alg.bracket(&b, &a);
    assert!(ab.iter().zip(&ba).all(|(x, y)| x.add(y).is_zero()));
}

type Suite<'a> = Box<dyn Fn(u64) + Sync + 'a>;

fn criterion_11() -> String {
    let start = Instant::now();
    let so3_product = {
        let c = ctx(&["x1", "x2"], &["y1", "y2", "y3"]);
        Multivector::basis(&c, &[0, 1]).add(&so3_lin(&c, 2))
    };
    let alg = algebroid_from_jet(&first_jet_model(&decompose(&so3_product).unwrap()).unwrap()).unwrap();
    assert!(alg.is_lie_algebroid());
    let suites: [(&str, Suite); 9] = [
        ("schouten", Box::new(schouten_suite)),
        ("ltimes", Box::new(ltimes_suite)),
        ("newton", Box::new(newton_suite)),
        ("gamma_s", Box::new(gamma_s_suite)),
        ("centrality", Box::new(centrality_suite)),
        ("dilation", Box::new(dilation_suite)),
        ("homogeneity", Box::new(homogeneity_suite)),
        ("differential", Box::new(differential_suite)),
        ("algebroid", Box::new(move |s| algebroid_suite(&alg, s))),
    ];
    std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|(name, f)| {
                scope.spawn(move || {
                    for seed in 0..INSTANCES + 1 {
                        if catch_unwind(AssertUnwindSafe(|| f(0xacce_0000 + seed))).is_err() {
                            panic!("{name} failed on seed {seed}");
                        }
                    }
                })
            })
            .collect();
        for h in handles {
            if let Err(e) = h.join() {
                std::panic::resume_unwind(e);
            }
        }
    });
    within(start, Duration::from_secs(300), "property suites");
    format!("{} suites x {} instances", suites.len(), INSTANCES + 1)
}

fn criterion_12() -> String {
    let program = concat!(env!("CARGO_MANIFEST_DIR"), "/programs/sphere_pipeline.lnf");
    let run = || {
        Process::new(env!("CARGO_BIN_EXE_leafnorm"))
            .args(["run", program])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(
        a.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.starts_with(br#"{"version":1,"commands":["#));
    assert!(!String::from_utf8_lossy(&a.stdout).contains(r#""ok":false"#));
    "exit 0, identical JSON across runs".into()
}

type Criterion<'a> = Box<dyn Fn() -> String + Sync + 'a>;

#[test]
fn acceptance() {
    let set = catalog();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("Jacobi identities", Box::new(criterion_1)),
        ("Vorobjev equivalence", Box::new(|| criterion_2(&set))),
        ("Round trips", Box::new(|| criterion_3(&set))),
        ("Chain map", Box::new(|| criterion_4(&set))),
        ("First-jet invariance", Box::new(criterion_5)),
        ("Moser path", Box::new(criterion_6)),
        ("Linearization velocity", Box::new(criterion_7)),
        ("Monodromy", Box::new(criterion_8)),
        ("Algebraicity obstruction", Box::new(criterion_9)),
        ("Regular-case deformation", Box::new(criterion_10)),
        ("Property suites", Box::new(criterion_11)),
        ("CLI", Box::new(criterion_12)),
    ];
    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let results: Vec<Result<String, String>> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| scope.spawn(move || catch_unwind(AssertUnwindSafe(f))))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join().unwrap().map_err(|e| {
                    e.downcast_ref::<String>()
                        .cloned()
                        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "panic".into())
                })
            })
            .collect()
    });
    std::panic::set_hook(default_hook);
    let mut failed = Vec::new();
    for (i, ((name, _), res)) in criteria.iter().zip(&results).enumerate() {
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(msg) => {
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
