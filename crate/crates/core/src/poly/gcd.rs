//! Greatest common divisors in `Z[s_0, s_1, ...]`.
//!
//! The driver peels off cheap cases first (constants, monomials, symbols that
//! occur in only one argument). For the remaining shared symbols a modular
//! image bounds the degree of the gcd in each symbol; a zero bound lets the
//! problem split into gcds of coefficients. Otherwise the heuristic gcd
//! (evaluation at a large integer, integer gcd, adic reconstruction, trial
//! division) is tried, with the subresultant remainder sequence as the last
//! resort.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::Poly;

const PRIME: u64 = 2_147_483_647;

/// Gcd with positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.content().gcd(&b.content()));
    }
    if a.len() == 1 {
        return monomial_gcd(a, b);
    }
    if b.len() == 1 {
        return monomial_gcd(b, a);
    }
    if a == b || *a == -b {
        return a.clone().normalize_sign();
    }
    gcd_rec(a, b)
}

fn monomial_gcd(mono: &Poly, other: &Poly) -> Poly {
    let (m, c) = &mono.terms()[0];
    let mut g = m.clone();
    for (om, _) in other.terms() {
        g = g.gcd(om);
        if g.is_one() {
            break;
        }
    }
    Poly::term(g, c.abs().gcd(&other.content()))
}

fn gcd_of_all(start: Poly, polys: impl IntoIterator<Item = Poly>) -> Poly {
    let mut polys: Vec<Poly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    polys.sort_by_key(|p| p.len());
    let mut g = start;
    for p in polys {
        g = gcd(&g, &p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    let sa = a.symbols();
    let sb = b.symbols();
    if let Some(&s) = sa.iter().find(|s| sb.binary_search(s).is_err()) {
        return gcd_of_all(b.clone(), a.coeffs_in(s));
    }
    if let Some(&s) = sb.iter().find(|s| sa.binary_search(s).is_err()) {
        return gcd_of_all(a.clone(), b.coeffs_in(s));
    }
    // A degree-zero bound in symbol s means the gcd does not involve s, so it
    // divides every coefficient of a and b with respect to s.
    for &s in &sa {
        if modular_degree_bound(a, b, s) == Some(0) {
            let coeffs = a.coeffs_in(s).into_iter().chain(b.coeffs_in(s));
            return gcd_of_all(Poly::zero(), coeffs);
        }
    }
    if let Some(g) = heu_gcd(a, b) {
        return g;
    }
    let s = *sa
        .iter()
        .min_by_key(|&&s| a.degree_in(s).max(b.degree_in(s)))
        .expect("non-constant polynomials have symbols");
    subresultant_gcd(a, b, s)
}

fn union_symbols(a: &Poly, b: &Poly) -> Vec<usize> {
    let mut s = a.symbols();
    s.extend(b.symbols());
    s.sort_unstable();
    s.dedup();
    s
}

fn max_norm(p: &Poly) -> BigInt {
    p.terms().iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

/// `p` with symbol `s` replaced by the integer `xi`.
fn eval_at(p: &Poly, s: usize, xi: &BigInt) -> Poly {
    let mut powers = vec![BigInt::from(1)];
    for _ in 0..p.degree_in(s) {
        let next = powers.last().expect("nonempty") * xi;
        powers.push(next);
    }
    Poly::from_terms(
        p.terms()
            .iter()
            .map(|(m, c)| (m.with_exp(s, 0), c * &powers[m.exp(s) as usize])),
    )
}

/// Reads the coefficients of `h` as numbers in base `xi` with symmetric
/// digits; digit `k` becomes the coefficient of `s^k`.
fn interpolate(h: &Poly, s: usize, xi: &BigInt) -> Poly {
    let half = xi / 2;
    let mut terms = Vec::new();
    let mut h = h.clone();
    let mut k = 0;
    while !h.is_zero() {
        let digits = Poly::from_terms(h.terms().iter().map(|(m, c)| {
            let mut r = c.mod_floor(xi);
            if r > half {
                r -= xi;
            }
            (m.clone(), r)
        }));
        terms.extend(digits.terms().iter().map(|(m, c)| (m.with_exp(s, k), c.clone())));
        h = (&h - &digits).div_int_exact(xi);
        k += 1;
    }
    Poly::from_terms(terms)
}

fn primitive(p: Poly) -> Poly {
    let c = p.content();
    p.div_int_exact(&c)
}

/// Heuristic gcd of nonzero polynomials. With evaluation points above
/// `2 min(|a|, |b|) + 2` a reconstructed candidate dividing both inputs is
/// the gcd; `None` means every point tried was unlucky.
fn heu_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let syms = union_symbols(a, b);
    let (ca, cb) = (a.content(), b.content());
    let gc = ca.gcd(&cb);
    let (a, b) = (a.div_int_exact(&ca), b.div_int_exact(&cb));
    let Some((&s, _)) = syms.split_first() else {
        return Some(Poly::constant(gc));
    };
    let mut xi = max_norm(&a).min(max_norm(&b)) * 2 + 29;
    for _ in 0..6 {
        let (ea, eb) = (eval_at(&a, s, &xi), eval_at(&b, s, &xi));
        if !ea.is_zero() && !eb.is_zero() {
            if let Some(h) = heu_gcd(&ea, &eb) {
                let cand = primitive(interpolate(&h, s, &xi));
                if !cand.is_zero() && a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                    return Some(cand.scale(&gc).normalize_sign());
                }
                for (e, p, other) in [(&ea, &a, &b), (&eb, &b, &a)] {
                    let cof = interpolate(&e.div_exact(&h).expect("h divides its input"), s, &xi);
                    if cof.is_zero() {
                        continue;
                    }
                    if let Some(cand) = p.div_exact(&cof) {
                        if other.div_exact(&cand).is_some() {
                            return Some(primitive(cand).scale(&gc).normalize_sign());
                        }
                    }
                }
            }
        }
        xi = &xi * 73794 * xi.sqrt().sqrt() / 27011;
    }
    None
}

fn reduce_mod(c: &BigInt) -> u64 {
    if let Some(v) = c.to_i64() {
        return v.rem_euclid(PRIME as i64) as u64;
    }
    c.mod_floor(&BigInt::from(PRIME))
        .to_u64()
        .expect("residue fits in u64")
}

fn pow_mod(mut b: u64, mut e: u32) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, (PRIME - 2) as u32)
}

/// Image of `p` in `F_p[s]` with every other symbol evaluated at `point`.
fn eval_univariate(p: &Poly, s: usize, point: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; p.degree_in(s) as usize + 1];
    for (m, c) in p.terms() {
        let mut v = reduce_mod(c);
        for (i, &e) in m.exponents().iter().enumerate() {
            if i != s && e > 0 {
                v = v * pow_mod(point[i], e) % PRIME;
            }
        }
        let k = m.exp(s) as usize;
        out[k] = (out[k] + v) % PRIME;
    }
    out
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let inv = inv_mod(*b.last().unwrap());
        while a.len() >= b.len() {
            let f = a.last().unwrap() * inv % PRIME;
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                let t = f * bc % PRIME;
                a[i + shift] = (a[i + shift] + PRIME - t) % PRIME;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Upper bound on `deg_s gcd(a, b)` from a modular image, when a lucky
/// evaluation point is found.
fn modular_degree_bound(a: &Poly, b: &Poly, s: usize) -> Option<usize> {
    let nsym = a
        .symbols()
        .last()
        .copied()
        .max(b.symbols().last().copied())
        .unwrap_or(0)
        + 1;
    let (da, db) = (a.degree_in(s) as usize, b.degree_in(s) as usize);
    let mut state: u64 = 0x9e37_79b9 ^ (s as u64 * 7919);
    for _ in 0..4 {
        let point: Vec<u64> = (0..nsym)
            .map(|_| {
                state = state
                    .wrapping_mul(6_364_136_223_846_793_005)
                    .wrapping_add(1_442_695_040_888_963_407);
                (state >> 33) % (PRIME - 2) + 2
            })
            .collect();
        let ea = eval_univariate(a, s, &point);
        let eb = eval_univariate(b, s, &point);
        if ea[da] == 0 || eb[db] == 0 {
            continue;
        }
        return Some(gcd_degree_mod(ea, eb));
    }
    None
}

type UPoly = Vec<Poly>;

fn utrim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg(p: &UPoly) -> usize {
    p.len() - 1
}

fn ucontent(p: &UPoly) -> Poly {
    gcd_of_all(Poly::zero(), p.iter().cloned())
}

fn udiv(p: &UPoly, d: &Poly) -> UPoly {
    p.iter()
        .map(|c| c.div_exact(d).expect("exact coefficient division"))
        .collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut e = deg(a) as i64 - db as i64 + 1;
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lr * bc);
        }
        utrim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn subresultant_gcd(a: &Poly, b: &Poly, s: usize) -> Poly {
    let mut ua = a.coeffs_in(s);
    let mut ub = b.coeffs_in(s);
    let ca = ucontent(&ua);
    let cb = ucontent(&ub);
    let content = gcd(&ca, &cb);
    ua = udiv(&ua, &ca);
    ub = udiv(&ub, &cb);
    if deg(&ua) < deg(&ub) {
        std::mem::swap(&mut ua, &mut ub);
    }
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = (deg(&ua) - deg(&ub)) as u32;
        let r = prem(&ua, &ub);
        if r.is_empty() {
            break;
        }
        if deg(&r) == 0 {
            ub = vec![Poly::one()];
            break;
        }
        ua = ub;
        let divisor = &g * &h.pow(delta);
        ub = udiv(&r, &divisor);
        g = ua[deg(&ua)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g
                .pow(d)
                .div_exact(&h.pow(d - 1))
                .expect("subresultant scaling is exact"),
        };
    }
    let pp = udiv(&ub, &ucontent(&ub));
    let result = &content * &Poly::from_coeffs_in(s, &pp);
    result.normalize_sign()
}
