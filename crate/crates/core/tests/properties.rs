//! Algebraic invariants on random operators. Each case draws a seed and
//! builds its inputs with a deterministic generator.

mod common;

use common::*;
use ilt::format::operator_to_json;
use ilt::parse::{operator_from_json, parse_expr, parse_operator};
use ilt::{Lpdo, RationalExpr};
use proptest::prelude::*;

const ALL: [usize; 3] = [0, 1, 2];

fn nonzero(rng: &mut rand_chacha::ChaCha8Rng) -> RationalExpr {
    loop {
        let f = rational_expr(rng, &ALL);
        if !f.is_zero() {
            return f;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative_and_acts_by_application(seed in any::<u64>()) {
        let t = xyz();
        let mut r = rng(seed);
        let a = random_operator(&mut r, &t, 2, 3, &ALL);
        let b = random_operator(&mut r, &t, 2, 3, &ALL);
        let c = random_operator(&mut r, &t, 1, 3, &ALL);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        let f = rational_expr(&mut r, &ALL);
        prop_assert_eq!((&a * &b).apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn symbols_multiply(seed in any::<u64>()) {
        let t = xyz();
        let mut r = rng(seed);
        let a = random_operator(&mut r, &t, 2, 3, &ALL);
        let b = random_operator(&mut r, &t, 2, 3, &ALL);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = (&a * &b).principal_symbol().unwrap();
        prop_assert_eq!(ab, a.principal_symbol().unwrap().mul(&b.principal_symbol().unwrap()));
    }

    #[test]
    fn commutator_is_antisymmetric(seed in any::<u64>()) {
        let t = xyz();
        let mut r = rng(seed);
        let a = random_operator(&mut r, &t, 2, 3, &ALL);
        let b = random_operator(&mut r, &t, 2, 3, &ALL);
        prop_assert!(a.commutator(&a).unwrap().is_zero());
        prop_assert_eq!(a.commutator(&b).unwrap(), -b.commutator(&a).unwrap());
    }

    #[test]
    fn conjugation_keeps_the_symbol(seed in any::<u64>()) {
        let t = xyz();
        let mut r = rng(seed);
        let l = random_operator(&mut r, &t, 2, 3, &ALL);
        prop_assume!(!l.is_zero());
        let lambda = nonzero(&mut r);
        let c = l.conjugate(&lambda).unwrap();
        prop_assert_eq!(c.principal_symbol().unwrap(), l.principal_symbol().unwrap());
        let f = rational_expr(&mut r, &ALL);
        let direct = l.apply(&(&lambda * &f)).checked_div(&lambda).unwrap();
        prop_assert_eq!(c.apply(&f), direct);
    }

    #[test]
    fn right_division_reconstructs(seed in any::<u64>(), var in 0usize..3) {
        let t = xyz();
        let mut r = rng(seed);
        let l = random_operator(&mut r, &t, 3, 4, &ALL);
        let m = &Lpdo::d(&t, var).scale(&nonzero(&mut r)) + &random_operator(&mut r, &t, 1, 2, &ALL);
        prop_assume!(!m.coeff_of_d(var).is_zero());
        let (q, rem) = l.right_divide(&m, var).unwrap();
        prop_assert_eq!(&(&q * &m) + &rem, l);
        prop_assert_eq!(rem.degree_in(var), 0);
    }

    #[test]
    fn derivations_obey_leibniz(seed in any::<u64>(), var in 0usize..3) {
        let t = xyz();
        let mut r = rng(seed);
        let f = rational_expr(&mut r, &ALL);
        let g = rational_expr(&mut r, &ALL);
        let lhs = t.derive(&(&f * &g), var);
        prop_assert_eq!(lhs, &(&t.derive(&f, var) * &g) + &(&f * &t.derive(&g, var)));
    }

    #[test]
    fn text_and_json_round_trip(seed in any::<u64>()) {
        let t = xyz();
        let mut r = rng(seed);
        let l = random_operator(&mut r, &t, 3, 5, &ALL);
        prop_assert_eq!(&parse_operator(&l.to_string(), &t).unwrap(), &l);
        prop_assert_eq!(&operator_from_json(&operator_to_json(&l), &t).unwrap(), &l);
        let f = rational_expr(&mut r, &ALL);
        prop_assert_eq!(parse_expr(&t.show(&f), &t).unwrap(), f);
    }

    #[test]
    fn generated_certificates_hold(seed in any::<u64>()) {
        let t = xyz();
        let (_, cert) = random_certificate(&mut rng(seed), &t);
        for (name, ok) in identities_hold(&cert) {
            prop_assert!(ok, "{} failed", name);
        }
        prop_assert!(cert.check().unwrap().all_hold());
    }
}
