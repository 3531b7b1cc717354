mod common;

use std::sync::Arc;

use common::*;
use ilt::classical::darboux::{darboux_hyperbolic, darboux_parabolic, euler_darboux};
use ilt::classical::dini::{dini_decompose, dini_to_ilt};
use ilt::classical::laplace::{cascade, gauge_as_ilt, laplace_invariants, laplace_transform, CascadeOutcome, Direction, StepStatus};
use ilt::classical::lodo::{lodo_euclid, lodo_transform_as_ilt, schrodinger_darboux};
use ilt::classical::petren::petren_transform;
use ilt::ilt::detect_psi;
use ilt::parse::{parse_expr, parse_operator};
use ilt::{Error, FieldTower, Lpdo, RationalExpr};

fn op(t: &Arc<FieldTower>, s: &str) -> Lpdo {
    parse_operator(s, t).unwrap()
}

fn ex(t: &Arc<FieldTower>, s: &str) -> RationalExpr {
    parse_expr(s, t).unwrap()
}

fn plane() -> Arc<FieldTower> {
    Arc::new(FieldTower::new(["x", "y"]).unwrap())
}

fn abc(t: &Arc<FieldTower>, a: &str, b: &str, c: &str) -> [RationalExpr; 3] {
    [ex(t, a), ex(t, b), ex(t, c)]
}

#[test]
fn laplace_invariant_values() {
    let t = plane();
    let inv = |a, b, c| {
        let [a, b, c] = abc(&t, a, b, c);
        let d = laplace_invariants(&t, &a, &b, &c).unwrap();
        (t.show(&d.h), t.show(&d.k))
    };
    assert_eq!(inv("0", "0", "0"), ("0".into(), "0".into()));
    assert_eq!(inv("x", "y", "x*y"), ("1".into(), "1".into()));
    assert_eq!(inv("x*y", "0", "0"), ("y".into(), "0".into()));
}

#[test]
fn laplace_transforms() {
    let t = plane();
    let [a, b, c] = abc(&t, "x", "y", "x*y");
    let cert = laplace_transform(&t, &a, &b, &c, Direction::X).unwrap();
    assert!(cert.psi.is_zero());
    assert_eq!(cert.l1, cert.l);
    assert_eq!(cert.h, op(&t, "1"));

    let [a, b, c] = abc(&t, "x*y", "0", "0");
    let cert = laplace_transform(&t, &a, &b, &c, Direction::X).unwrap();
    assert_eq!(cert.psi, ex(&t, "-1/y"));
    assert_eq!(cert.l1, op(&t, "Dx*Dy + (x*y - 1/y)*Dx - y"));
    assert!(cert.check().unwrap().all_hold());
    assert_eq!(
        laplace_transform(&t, &a, &b, &c, Direction::Y),
        Err(Error::ZeroInvariant("k"))
    );
}

#[test]
fn cascades() {
    let t = plane();
    let zero = RationalExpr::zero();
    let r = cascade(&t, &zero, &zero, &zero, Direction::X, 5).unwrap();
    assert_eq!(r.steps.len(), 1);
    assert_eq!(
        r.outcome,
        CascadeOutcome::Factored {
            first: op(&t, "Dx"),
            second: op(&t, "Dy")
        }
    );

    let [a, b, c] = abc(&t, "x", "y", "x*y");
    let r = cascade(&t, &a, &b, &c, Direction::X, 4).unwrap();
    assert_eq!(r.outcome, CascadeOutcome::Exhausted);
    assert_eq!(r.steps.len(), 5);
    assert!(r.steps.iter().all(|s| s.data.h.is_one()));
    assert_eq!(r.steps[4].status, StepStatus::Exhausted);

    let [a, b, c] = abc(&t, "2/(x+y)", "0", "0");
    let r = cascade(&t, &a, &b, &c, Direction::X, 3).unwrap();
    for s in &r.steps {
        if let Some(cert) = &s.certificate {
            assert!(cert.check().unwrap().all_hold(), "step {}", s.step);
        }
    }
    assert!(r.steps.iter().filter(|s| s.certificate.is_some()).count() >= 1);
}

#[test]
fn gauge_transforms() {
    let t = plane();
    let (x, one) = (sym(&t, "x"), RationalExpr::one());
    let c = gauge_as_ilt(&op(&t, "Dx^2"), &x, &one).unwrap();
    assert_eq!(c.l1, op(&t, "Dx^2 + 2/x*Dx"));
    let l = op(&t, "Dx*Dy + x*Dy + y");
    assert_eq!(gauge_as_ilt(&l, &one, &ex(&t, "x^2 - y")).unwrap().l1, l);
    assert_eq!(gauge_as_ilt(&l, &RationalExpr::zero(), &one), Err(Error::ZeroGauge));

    let mut rng = rng(11);
    let phi = ex(&t, "x + 1");
    for _ in 0..10 {
        let l = random_operator(&mut rng, &t, 2, 4, &[0, 1]);
        let lambda = loop {
            let f = rational_expr(&mut rng, &[0, 1]);
            if !f.is_zero() {
                break f;
            }
        };
        let c = gauge_as_ilt(&l, &lambda, &phi).unwrap();
        assert!(c.check().unwrap().all_hold());
        assert_eq!(c.l1, l.conjugate(&lambda).unwrap());
    }
}

#[test]
fn euclid() {
    let t = plane();
    let (l, m) = (op(&t, "Dx^2"), op(&t, "Dx + x"));
    let e = lodo_euclid(&l, &m).unwrap();
    assert_eq!(e.gcd, Lpdo::one(&t));
    assert_eq!(e.lclm.order(), Some(3));
    assert_eq!(&e.m_bar * &l, e.lclm);
    assert_eq!(&e.l_bar * &m, e.lclm);
    assert_eq!(&(&e.s * &l) + &(&e.t * &m), e.gcd);

    let e = lodo_euclid(&op(&t, "(Dx + x)*Dx"), &op(&t, "Dx")).unwrap();
    assert_eq!(e.gcd, op(&t, "Dx"));
    let e = lodo_euclid(&m, &m).unwrap();
    assert_eq!((e.gcd.clone(), e.lclm.clone()), (m.clone(), m.clone()));
    assert_eq!(lodo_euclid(&op(&t, "Dx"), &op(&t, "Dy")), Err(Error::NotUnivariate));
}

#[test]
fn ordinary_transforms() {
    let t = plane();
    let c = lodo_transform_as_ilt(&op(&t, "Dx^2"), &op(&t, "Dx + x")).unwrap();
    assert_eq!(c.x1, op(&t, "Dx - x"));
    assert_eq!(c.h, op(&t, "1 - x^2"));
    assert_eq!(c.psi, detect_psi(&c.h, &c.x2).unwrap());
    assert!(c.check().unwrap().all_hold());

    let c = lodo_transform_as_ilt(&op(&t, "Dx^2 - x"), &op(&t, "Dx")).unwrap();
    assert_eq!(c.h, op(&t, "x"));
    assert!(c.check().unwrap().all_hold());
    assert_eq!(
        lodo_transform_as_ilt(&op(&t, "(Dx + x)*Dx"), &op(&t, "Dx")),
        Err(Error::DivisibleByM)
    );
}

#[test]
fn schrodinger() {
    let t = plane();
    let s = schrodinger_darboux(&t, &sym(&t, "x")).unwrap();
    assert_eq!(s.u, ex(&t, "x^2 + 1"));
    assert_eq!(s.u_tilde, ex(&t, "x^2 - 1"));
    assert!(s.certificate.h.is_zero() && s.certificate.psi.is_zero());
    assert!(s.alternate.psi.is_zero());
    assert_eq!(s.alternate.l1, s.l_tilde);
    let s = schrodinger_darboux(&t, &RationalExpr::zero()).unwrap();
    assert!(s.u.is_zero() && s.u_tilde.is_zero());
    assert_eq!(s.l, s.l_tilde);
}

#[test]
fn hyperbolic_darboux() {
    let t = plane();
    let zero = RationalExpr::zero();
    let c = darboux_hyperbolic(&t, &zero, &zero, &zero, &[ex(&t, "x + y")]).unwrap();
    assert_eq!(c.m, op(&t, "Dx - 1/(x + y)"));
    assert_eq!(c.psi, ex(&t, "1/(x + y)"));
    assert_eq!(c.l1, op(&t, "Dx*Dy + 1/(x + y)*Dy - 1/(x + y)^2"));
    assert!(c.check().unwrap().all_hold());

    let one = RationalExpr::one();
    let c = darboux_hyperbolic(&t, &zero, &sym(&t, "y"), &zero, std::slice::from_ref(&one)).unwrap();
    assert_eq!(c.m, op(&t, "Dx"));
    assert_eq!(c.h, op(&t, "-y*Dy"));
    assert!(c.check().unwrap().all_hold());
    // alpha = b + (z1)_x/z1 = 0
    assert!(matches!(
        darboux_hyperbolic(&t, &zero, &zero, &zero, &[one]),
        Err(Error::DegenerateSeeds(_))
    ));

    let seeds = [ex(&t, "x + y"), ex(&t, "x^2 + y")];
    let c = darboux_hyperbolic(&t, &zero, &zero, &zero, &seeds).unwrap();
    assert_eq!(c.m.order(), Some(1));
    assert!(!c.m.coeff_of_d(1).is_zero());
    for z in &seeds {
        assert!(c.m.apply(z).is_zero() && c.h.apply(z).is_zero());
    }
    assert!(c.check().unwrap().all_hold());

    assert!(matches!(
        darboux_hyperbolic(&t, &zero, &zero, &zero, &[ex(&t, "x + y"), ex(&t, "x*y")]),
        Err(Error::SeedNotASolution(_))
    ));
}

#[test]
fn parabolic_darboux() {
    let t = plane();
    let [a, b, c] = abc(&t, "0", "1", "0");
    let cert = darboux_parabolic(&t, &a, &b, &c, &[sym(&t, "x")]).unwrap();
    assert_eq!(cert.m, op(&t, "Dx - 1/x"));
    assert_eq!(cert.h, op(&t, "-Dy"));
    assert!(cert.psi.is_zero());
    assert_eq!(cert.l1, op(&t, "Dx^2 + Dy - 2/x^2"));

    let cert = darboux_parabolic(&t, &a, &b, &c, &[RationalExpr::one()]).unwrap();
    assert_eq!(cert.m, op(&t, "Dx"));
    assert_eq!(cert.l1, cert.l);

    let seeds = [sym(&t, "x"), ex(&t, "x^2/2 - y")];
    let cert = darboux_parabolic(&t, &a, &b, &c, &seeds).unwrap();
    assert!(!cert.m.coeff_of_d(1).is_zero());
    assert!(cert.check().unwrap().all_hold());
    assert_eq!(darboux_parabolic(&t, &a, &a, &c, &seeds), Err(Error::ZeroB));
}

#[test]
fn euler_darboux_transforms() {
    let t = plane();
    let (x, zero) = (sym(&t, "x"), RationalExpr::zero());
    let c = euler_darboux(&op(&t, "Dx^2"), &op(&t, "Dy"), &x, &zero).unwrap();
    assert_eq!(c.l1, op(&t, "Dx^2 + Dy - 2/x^2"));
    let p = darboux_parabolic(&t, &zero, &RationalExpr::one(), &zero, std::slice::from_ref(&x)).unwrap();
    assert_eq!(c.l1, p.l1);

    let c = euler_darboux(&op(&t, "Dx"), &op(&t, "Dy"), &RationalExpr::one(), &zero).unwrap();
    assert_eq!(c.m, op(&t, "Dx"));
    assert_eq!(c.l1, c.l);

    let t3 = Arc::new(FieldTower::new(["x", "y1", "y2"]).unwrap());
    let c = euler_darboux(&op(&t3, "Dx^2"), &op(&t3, "Dy1^3 + y2*Dy2"), &sym(&t3, "x"), &zero).unwrap();
    assert!(c.check().unwrap().all_hold());
}

#[test]
fn petren() {
    let base = FieldTower::new(["x", "y"]).unwrap();
    let (one, zero) = (RationalExpr::one(), RationalExpr::zero());

    let t = Arc::new(base.clone());
    let c = petren_transform(&t, &[zero.clone(), one.clone()], &[one.clone(), RationalExpr::from_int(2)], &one).unwrap();
    assert_eq!(c.m, op(&t, "Dy"));
    assert!(c.check().unwrap().all_hold());

    let g = RationalExpr::symbol(2);
    let t = Arc::new(base.declare_generator("t", &[("y", g.clone())]).unwrap());
    let a = [-&one, zero.clone(), one.clone()];
    let b = [sym(&t, "x"), zero.clone(), zero.clone()];
    let c = petren_transform(&t, &a, &b, &g).unwrap();
    assert!(c.check().unwrap().all_hold());

    assert_eq!(
        petren_transform(&t, &a, &b, &sym(&t, "y")),
        Err(Error::SeedNotAnnihilated)
    );
}

#[test]
fn dini() {
    let t = xyz();
    let x2 = op(&t, "Dx");
    let d = dini_decompose(&op(&t, "x*Dx + Dz"), &x2).unwrap();
    assert!(d.kappa.is_zero());
    assert_eq!(d.rho, ex(&t, "-1"));
    let d2 = dini_decompose(&op(&t, "x*Dz"), &x2).unwrap();
    assert_eq!((d2.kappa.clone(), d2.rho.clone()), (ex(&t, "-1/x"), RationalExpr::zero()));
    assert_eq!(dini_decompose(&op(&t, "Dz + x"), &x2), Err(Error::NoDecomposition));

    let (h, x1) = (op(&t, "x*Dx + Dz"), op(&t, "Dy"));
    let c = dini_to_ilt(&x1, &x2, &h, &d, &ex(&t, "-x")).unwrap();
    assert_eq!(c.h, op(&t, "Dz"));
    assert!(c.psi.is_zero());
    assert_eq!(c.l, op(&t, "Dy*Dx - x*Dx - Dz"));
    assert_eq!(c.l1, op(&t, "Dx*Dy - x*Dx - 1 - Dz"));
    assert!(c.check().unwrap().all_hold());

    // rho = 0 with alpha = 0 leaves H alone and psi = kappa
    let c = dini_to_ilt(&x1, &x2, &op(&t, "x*Dz"), &d2, &RationalExpr::zero()).unwrap();
    assert_eq!(c.h, op(&t, "x*Dz"));
    assert_eq!(c.psi, d2.kappa);

    assert!(matches!(
        dini_to_ilt(&x1, &x2, &h, &d, &sym(&t, "x")),
        Err(Error::AlphaNotASolution { .. })
    ));
}
