//! Sparse multivariate polynomials with integer coefficients.
//!
//! Symbols are addressed by index. Exponent vectors are stored with trailing
//! zeros trimmed, so a polynomial written over the first `k` symbols of a
//! tower stays valid, unchanged, in every extension of that tower.
//!
//! Terms are kept sorted by graded lexicographic order, largest first.

mod gcd;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub use gcd::gcd;

/// An exponent vector with trailing zeros removed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        let mut v: SmallVec<[u32; 4]> = SmallVec::from_elem(0, i + 1);
        v[i] = e;
        let mut m = Monomial(v);
        m.trim();
        m
    }

    pub fn from_exponents<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        let mut m = Monomial(exps.into_iter().collect());
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut out = self.0.clone();
        for (i, &e) in other.0.iter().enumerate() {
            if out[i] < e {
                return None;
            }
            out[i] -= e;
        }
        let mut m = Monomial(out);
        m.trim();
        Some(m)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().min(other.0.len());
        Monomial::from_exponents((0..n).map(|i| self.exp(i).min(other.exp(i))))
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let n = self.0.len().max(i + 1);
        let mut out: SmallVec<[u32; 4]> = (0..n).map(|j| self.exp(j)).collect();
        out[i] = e;
        let mut m = Monomial(out);
        m.trim();
        m
    }

    pub fn symbols(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

/// Graded lexicographic order: total degree first, then the exponent of the
/// earliest symbol.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.terms.iter().map(|(m, c)| (c.to_string(), m)))
            .finish()
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> BigInt {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0)
    }

    /// Sorted list of symbols that occur.
    pub fn symbols(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for (m, _) in &self.terms {
            for s in m.symbols() {
                if let Err(pos) = out.binary_search(&s) {
                    out.insert(pos, s);
                }
            }
        }
        out
    }

    pub fn contains_symbol(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(i) > 0)
    }

    /// Non-negative gcd of the integer coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * k))
                .collect(),
        }
    }

    /// Divides every coefficient by `k`; the division must be exact.
    pub fn div_int_exact(&self, k: &BigInt) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert!((c % k).is_zero(), "inexact integer division");
                    (m.clone(), c / k)
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        Poly { terms: out }
    }

    fn product(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(k) = d.as_constant() {
            if self.terms.iter().any(|(_, c)| !(c % &k).is_zero()) {
                return None;
            }
            return Some(self.div_int_exact(&k));
        }
        let (dm, dc) = d.terms[0].clone();
        let mut q = Vec::new();
        let mut r = self.clone();
        while let Some((rm, rc)) = r.terms.first() {
            let qm = rm.div(&dm)?;
            let (qc, rem) = rc.div_rem(&dc);
            if !rem.is_zero() {
                return None;
            }
            r = r.merge(&d.mul_term(&qm, &qc), true);
            q.push((qm, qc));
        }
        Some(Poly { terms: q })
    }

    /// Partial derivative with respect to symbol `i`, treating every other
    /// symbol as a constant.
    pub fn partial(&self, i: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| {
                let e = m.exp(i);
                (m.with_exp(i, e - 1), c * BigInt::from(e))
            });
        // Differentiation does not preserve graded order in general.
        Poly::from_terms(terms)
    }

    /// Coefficients with respect to symbol `i`: entry `k` multiplies `s_i^k`.
    pub fn coeffs_in(&self, i: usize) -> Vec<Poly> {
        let deg = self.degree_in(i) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(i) as usize].push((m.with_exp(i, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_by(|a, b| b.0.cmp(&a.0));
                Poly { terms: t }
            })
            .collect()
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs_in(i: usize, coeffs: &[Poly]) -> Poly {
        Poly::from_terms(coeffs.iter().enumerate().flat_map(|(k, p)| {
            p.terms
                .iter()
                .map(move |(m, c)| (m.with_exp(i, m.exp(i) + k as u32), c.clone()))
        }))
    }

    /// Flips the sign so the leading coefficient is positive.
    pub fn normalize_sign(self) -> Poly {
        if self.lc().is_negative() {
            -self
        } else {
            self
        }
    }

    /// Square root in `Z[symbols]` if one exists (with positive leading
    /// coefficient).
    pub fn sqrt(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (lm, lc) = &self.terms[0];
        if lc.is_negative() {
            return None;
        }
        let root_c = lc.sqrt();
        if &(&root_c * &root_c) != lc || lm.0.iter().any(|e| e % 2 == 1) {
            return None;
        }
        let root_m = Monomial::from_exponents(lm.0.iter().map(|e| e / 2));
        let lead = (root_m, root_c);
        let mut s = Poly::term(lead.0.clone(), lead.1.clone());
        let two_lead_c = &lead.1 * 2;
        // Each round fixes the next term of the root; the remainder's leading
        // monomial strictly decreases.
        for _ in 0..=self.terms.len() * 4 + 8 {
            let rem = self - &(&s * &s);
            let Some((rm, rc)) = rem.terms.first() else {
                return Some(s);
            };
            let qm = rm.div(&lead.0)?;
            if qm >= lead.0 {
                return None;
            }
            let (qc, r) = rc.div_rem(&two_lead_c);
            if !r.is_zero() {
                return None;
            }
            s = &s + &Poly::term(qm, qc);
        }
        None
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.product(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }
    fn c(k: i64) -> Poly {
        Poly::constant(BigInt::from(k))
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_exponents([1, 1, 0]);
        let b = Monomial::from_exponents([1, 0, 1]);
        let d = Monomial::from_exponents([0, 0, 2]);
        assert!(a > b && b > d);
        assert!(Monomial::var(0) < d);
        assert_eq!(Monomial::from_exponents([0, 2, 0, 0]), Monomial::var_pow(1, 2));
    }

    #[test]
    fn exact_division() {
        let p = &(&x() + &c(1)) * &(&x() - &y());
        assert_eq!(p.div_exact(&(&x() - &y())), Some(&x() + &c(1)));
        assert_eq!(p.div_exact(&(&x() + &y())), None);
        assert_eq!(c(6).div_exact(&c(4)), None);
    }

    #[test]
    fn coefficient_split_round_trip() {
        let p = &(&(&x() * &y()) + &y().pow(3)) + &c(2);
        let parts = p.coeffs_in(1);
        assert_eq!(parts.len(), 4);
        assert_eq!(Poly::from_coeffs_in(1, &parts), p);
    }

    #[test]
    fn square_roots() {
        let r = &(&x() * &c(2)) - &y();
        assert_eq!((&r * &r).sqrt(), Some(r.normalize_sign()));
        assert_eq!(x().sqrt(), None);
        assert_eq!((&(&x() * &x()) + &c(1)).sqrt(), None);
    }
}
