#![allow(dead_code)]

use std::sync::Arc;

use ilt::ilt::{generate, IltCertificate};
use ilt::{FieldTower, Lpdo, MultiIndex, RationalExpr};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn xyz() -> Arc<FieldTower> {
    Arc::new(FieldTower::new(["x", "y", "z"]).unwrap())
}

pub fn sym(t: &FieldTower, name: &str) -> RationalExpr {
    t.symbol(name).unwrap()
}

fn nonzero_int(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// A product `c * s1^e1 * ...` over the listed symbol indices.
pub fn monomial_expr(rng: &mut ChaCha8Rng, symbols: &[usize], max_exp: u32) -> RationalExpr {
    let mut m = RationalExpr::from_int(nonzero_int(rng, 3));
    for &s in symbols {
        let e = rng.gen_range(0..=max_exp);
        m = &m * &RationalExpr::symbol(s).pow(e);
    }
    m
}

/// A polynomial with up to `terms` terms of degree at most two per symbol.
pub fn poly_expr(rng: &mut ChaCha8Rng, symbols: &[usize], terms: usize) -> RationalExpr {
    let n = rng.gen_range(1..=terms);
    let mut p = RationalExpr::zero();
    for _ in 0..n {
        p = &p + &monomial_expr(rng, symbols, 2);
    }
    p
}

/// Mostly polynomials, sometimes a quotient by a small polynomial.
pub fn rational_expr(rng: &mut ChaCha8Rng, symbols: &[usize]) -> RationalExpr {
    let num = poly_expr(rng, symbols, 2);
    if rng.gen_bool(0.3) {
        let mut den = poly_expr(rng, symbols, 2);
        while den.is_zero() {
            den = poly_expr(rng, symbols, 2);
        }
        num.checked_div(&den).unwrap()
    } else {
        num
    }
}

pub fn random_index(rng: &mut ChaCha8Rng, nvars: usize, max_order: u32) -> MultiIndex {
    let ord = rng.gen_range(0..=max_order);
    let mut idx = MultiIndex::zero();
    for _ in 0..ord {
        idx = idx.add(&MultiIndex::var(rng.gen_range(0..nvars)));
    }
    idx
}

/// Up to `terms` random terms of order at most `max_order`.
pub fn random_operator(
    rng: &mut ChaCha8Rng,
    t: &Arc<FieldTower>,
    max_order: u32,
    terms: usize,
    coeff_symbols: &[usize],
) -> Lpdo {
    let mut op = Lpdo::zero(t);
    for _ in 0..rng.gen_range(1..=terms) {
        let idx = random_index(rng, t.nvars(), max_order);
        op = &op + &Lpdo::monomial(t, idx, rational_expr(rng, coeff_symbols));
    }
    op
}

/// A random operator with polynomial coefficients and exactly the given
/// order.
pub fn operator_of_order(rng: &mut ChaCha8Rng, t: &Arc<FieldTower>, order: u32) -> Lpdo {
    loop {
        let mut op = Lpdo::zero(t);
        for k in 0..=order {
            for v in 0..t.nvars() {
                let mut idx = MultiIndex::zero();
                for j in 0..k {
                    idx = idx.add(&MultiIndex::var((v + j as usize) % t.nvars()));
                }
                op = &op + &Lpdo::monomial(t, idx, poly_expr(rng, &[0, 1, 2], 2));
            }
        }
        if op.order() == Some(order) {
            return op;
        }
    }
}

/// Inputs for a random certificate: `H~` with coefficients free of `x` and a
/// nonzero `D_x`-free part, monomial thetas, a first-order `X1`.
pub struct CertificateInputs {
    pub h_tilde: Lpdo,
    pub theta1: RationalExpr,
    pub theta2: RationalExpr,
    pub x1: Lpdo,
}

pub fn certificate_inputs(rng: &mut ChaCha8Rng, t: &Arc<FieldTower>) -> CertificateInputs {
    let others: Vec<usize> = (1..t.nvars()).collect();
    let h_tilde = loop {
        let h = random_operator(rng, t, 2, 3, &others);
        let dx_free = Lpdo::from_terms(
            t,
            h.terms()
                .filter(|(i, _)| i.exp(0) == 0)
                .map(|(i, c)| (i.clone(), c.clone())),
        );
        if !dx_free.is_zero() {
            break h;
        }
    };
    let all: Vec<usize> = (0..t.nvars()).collect();
    CertificateInputs {
        h_tilde,
        theta1: monomial_expr(rng, &all, 3),
        theta2: monomial_expr(rng, &all, 3),
        x1: random_operator(rng, t, 1, 3, &all),
    }
}

pub fn random_certificate(rng: &mut ChaCha8Rng, t: &Arc<FieldTower>) -> (CertificateInputs, IltCertificate) {
    let inputs = certificate_inputs(rng, t);
    let cert = generate(
        &inputs.h_tilde,
        &inputs.theta1,
        &inputs.theta2,
        &inputs.x1,
        0,
        None,
    )
    .expect("generation succeeds for x-free seeds");
    (inputs, cert)
}

/// Recomputes the defining identities from the raw operators.
pub fn identities_hold(c: &IltCertificate) -> Vec<(&'static str, bool)> {
    let t = c.tower();
    let psi = Lpdo::function(t, c.psi.clone());
    vec![
        ("L = X1 X2 - H", &(&c.x1 * &c.x2) - &c.h == c.l),
        ("L1 = X2 X1 + psi X1 - H", &(&(&c.x2 * &c.x1) + &(&psi * &c.x1)) - &c.h == c.l1),
        ("H X2 = (X2 + psi) H", &c.h * &c.x2 == &(&c.x2 + &psi) * &c.h),
        ("(X2 + psi) L = L1 X2", &(&c.x2 + &psi) * &c.l == &c.l1 * &c.x2),
        (
            "Sym L = Sym L1",
            c.l.principal_symbol().unwrap() == c.l1.principal_symbol().unwrap(),
        ),
    ]
}
