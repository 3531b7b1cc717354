use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::poly::{gcd, Monomial, Poly};

/// An element of the coefficient field: a quotient of integer polynomials in
/// the tower's variables and generators.
///
/// Always stored in canonical form: numerator and denominator coprime over
/// `Z[...]` (integer content included) and the denominator's leading
/// coefficient positive. Structural equality is therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalExpr {
    num: Poly,
    den: Poly,
}

impl Default for RationalExpr {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalExpr {
    pub fn zero() -> Self {
        RationalExpr {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_poly(Poly::constant(BigInt::from(k)))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        Self::from_poly(Poly::constant(k))
    }

    /// The fraction `n / d` of two integers.
    pub fn ratio(n: i64, d: i64) -> Result<Self> {
        Self::new(Poly::constant(n.into()), Poly::constant(d.into()))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalExpr {
            num: p,
            den: Poly::one(),
        }
    }

    /// The symbol with tower index `i` (variables first, then generators).
    pub fn symbol(i: usize) -> Self {
        Self::from_poly(Poly::var(i))
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::fix_sign(num, den)
    }

    fn fix_sign(num: Poly, den: Poly) -> Self {
        if den.lc().is_negative() {
            RationalExpr {
                num: -num,
                den: -den,
            }
        } else {
            RationalExpr { num, den }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// True when the value involves no symbol at all.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// True when the numerator's leading coefficient is negative; used to
    /// pull signs out when printing.
    pub fn is_negative(&self) -> bool {
        self.num.lc().is_negative()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::fix_sign(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalExpr {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        self * &Self::from_int(k)
    }

    /// Sorted symbol indices occurring in numerator or denominator.
    pub fn symbols(&self) -> Vec<usize> {
        let mut s = self.num.symbols();
        for t in self.den.symbols() {
            if let Err(pos) = s.binary_search(&t) {
                s.insert(pos, t);
            }
        }
        s
    }

    pub fn contains_symbol(&self, i: usize) -> bool {
        self.num.contains_symbol(i) || self.den.contains_symbol(i)
    }

    /// Replaces symbol `i` by `values[i]` for every `i < values.len()`;
    /// later symbols are left untouched.
    pub fn substitute(&self, values: &[RationalExpr]) -> Result<Self> {
        let mut cache = HashMap::new();
        let n = eval_poly(&self.num, values, &mut cache);
        let d = eval_poly(&self.den, values, &mut cache);
        n.checked_div(&d)
    }

    /// Size heuristic: number of stored terms.
    pub fn weight(&self) -> usize {
        self.num.len() + self.den.len()
    }
}

fn eval_poly(
    p: &Poly,
    values: &[RationalExpr],
    cache: &mut HashMap<(usize, u32), RationalExpr>,
) -> RationalExpr {
    let mut acc = RationalExpr::zero();
    for (m, c) in p.terms() {
        let mut kept = Monomial::one();
        let mut term = RationalExpr::from_bigint(c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if i < values.len() {
                let pw = cache
                    .entry((i, e))
                    .or_insert_with(|| values[i].pow(e))
                    .clone();
                term = &term * &pw;
            } else {
                kept = kept.mul(&Monomial::var_pow(i, e));
            }
        }
        if !kept.is_one() {
            term = &term * &RationalExpr::from_poly(Poly::term(kept, BigInt::one()));
        }
        acc = &acc + &term;
    }
    acc
}

impl Add for &RationalExpr {
    type Output = RationalExpr;
    fn add(self, rhs: &RationalExpr) -> RationalExpr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalExpr::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return RationalExpr::zero();
            }
            return RationalExpr::fix_sign(num, &self.den * &rhs.den);
        }
        let ad = self.den.div_exact(&g).expect("gcd divides");
        let bd = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &bd) + &(&rhs.num * &ad);
        if num.is_zero() {
            return RationalExpr::zero();
        }
        let den = &self.den * &bd;
        let g2 = gcd(&num, &g);
        if g2.is_one() {
            RationalExpr::fix_sign(num, den)
        } else {
            RationalExpr::fix_sign(
                num.div_exact(&g2).expect("gcd divides"),
                den.div_exact(&g2).expect("gcd divides"),
            )
        }
    }
}

impl Neg for &RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for &RationalExpr {
    type Output = RationalExpr;
    fn sub(self, rhs: &RationalExpr) -> RationalExpr {
        self + &(-rhs)
    }
}

impl Mul for &RationalExpr {
    type Output = RationalExpr;
    fn mul(self, rhs: &RationalExpr) -> RationalExpr {
        if self.is_zero() || rhs.is_zero() {
            return RationalExpr::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let div = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let den = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        RationalExpr::fix_sign(num, den)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalExpr {
            type Output = RationalExpr;
            fn $m(self, rhs: RationalExpr) -> RationalExpr {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalExpr> for RationalExpr {
            type Output = RationalExpr;
            fn $m(self, rhs: &RationalExpr) -> RationalExpr {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl From<i64> for RationalExpr {
    fn from(k: i64) -> Self {
        Self::from_int(k)
    }
}

impl From<Poly> for RationalExpr {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RationalExpr {
        RationalExpr::symbol(0)
    }
    fn y() -> RationalExpr {
        RationalExpr::symbol(1)
    }
    fn k(n: i64) -> RationalExpr {
        RationalExpr::from_int(n)
    }

    #[test]
    fn common_denominator() {
        let a = x().checked_div(&y()).unwrap();
        let b = k(1).checked_div(&y()).unwrap();
        let expected = (x() + k(1)).checked_div(&y()).unwrap();
        assert_eq!(&a + &b, expected);
        assert!(expected.numer() == &(&Poly::var(0) + &Poly::one()));
        assert!(expected.denom() == &Poly::var(1));
    }

    #[test]
    fn inverse_cancellation() {
        let r = &x() * &k(1).checked_div(&x()).unwrap();
        assert!(r.is_one());
    }

    #[test]
    fn quotient_reduces_by_polynomial_gcd() {
        let num = &(&x() * &x()) - &k(1);
        let den = &x() - &k(1);
        assert_eq!(num.checked_div(&den).unwrap(), &x() + &k(1));
    }

    #[test]
    fn zero_tests() {
        let inv = k(1).checked_div(&x()).unwrap();
        assert!((&(&x() * &inv) - &k(1)).is_zero());
        assert!(!(&x() - &y()).is_zero());
        let sq = (&x() + &k(1)).pow(2);
        let expanded = &(&(&x() * &x()) + &x().scale(2)) + &k(1);
        assert!((&sq - &expanded).is_zero());
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(x().checked_div(&k(0)), Err(Error::DivisionByZero));
        assert_eq!(k(0).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn sign_and_content_are_normalized() {
        // (-2x) / (4y) == -x / (2y)
        let a = RationalExpr::new(Poly::var(0).scale(&BigInt::from(-2)), Poly::var(1).scale(&BigInt::from(4)))
            .unwrap();
        let b = RationalExpr::new(Poly::var(0), Poly::var(1).scale(&BigInt::from(-2))).unwrap();
        assert_eq!(a, b);
        assert!(a.denom().lc() > BigInt::from(0));
    }

    #[test]
    fn substitution() {
        // x/(y+1) at x -> y^2, y -> y - 1   ==>  y^2 / y = y
        let f = x().checked_div(&(&y() + &k(1))).unwrap();
        let g = f.substitute(&[y().pow(2), &y() - &k(1)]).unwrap();
        assert_eq!(g, y());
    }
}
