//! Linear partial differential operators over the coefficient field.

mod coords;
mod division;
mod symbol;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{FieldTower, RationalExpr};
use crate::poly::Monomial;

pub use symbol::{factor_symbol_quadratic, PrincipalSymbol, QuadraticFactors};

/// Derivative exponents, one per variable, with trailing zeros trimmed.
///
/// Ordered graded-lexicographically: higher total order first, ties broken by
/// the exponent of the earliest variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(Monomial);

impl MultiIndex {
    pub fn zero() -> Self {
        MultiIndex(Monomial::one())
    }

    pub fn var(i: usize) -> Self {
        MultiIndex(Monomial::var(i))
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        MultiIndex(Monomial::var_pow(i, e))
    }

    pub fn from_exponents<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        MultiIndex(Monomial::from_exponents(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        self.0.exponents()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.exp(i)
    }

    pub fn order(&self) -> u32 {
        self.0.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_one()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.mul(&other.0))
    }

    /// `self - other`, when `other <= self` componentwise.
    pub fn sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0.div(&other.0).map(MultiIndex)
    }

    pub fn with_exp(&self, i: usize, e: u32) -> MultiIndex {
        MultiIndex(self.0.with_exp(i, e))
    }

    /// Variables with a positive exponent.
    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.symbols()
    }

    /// Every index `gamma <= self` componentwise, paired with the product of
    /// binomial coefficients `C(self, gamma)`.
    pub fn sub_indices(&self) -> Vec<(MultiIndex, BigInt)> {
        let mut out = vec![(Vec::new(), BigInt::from(1))];
        for &a in self.exponents() {
            let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
            for (prefix, coef) in &out {
                let mut binom = BigInt::from(1);
                for g in 0..=a {
                    let mut p: Vec<u32> = prefix.clone();
                    p.push(g);
                    next.push((p, coef * &binom));
                    binom = binom * BigInt::from(a - g) / BigInt::from(g + 1);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|(e, c)| (MultiIndex::from_exponents(e), c))
            .collect()
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{:?}", self.exponents())
    }
}

/// A linear partial differential operator `sum_alpha a_alpha D^alpha`, stored
/// in normal order (coefficients to the left of derivations).
#[derive(Clone)]
pub struct Lpdo {
    tower: Arc<FieldTower>,
    terms: BTreeMap<MultiIndex, RationalExpr>,
}

impl PartialEq for Lpdo {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_tower(&self.tower, &other.tower)
    }
}

impl Eq for Lpdo {}

fn same_tower(a: &Arc<FieldTower>, b: &Arc<FieldTower>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl fmt::Debug for Lpdo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lpdo({})", crate::format::operator_to_string(self))
    }
}

impl fmt::Display for Lpdo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::operator_to_string(self))
    }
}

impl Lpdo {
    pub fn zero(tower: &Arc<FieldTower>) -> Self {
        Lpdo {
            tower: tower.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Multiplication by a function, as an operator of order zero.
    pub fn function(tower: &Arc<FieldTower>, f: RationalExpr) -> Self {
        Self::monomial(tower, MultiIndex::zero(), f)
    }

    pub fn one(tower: &Arc<FieldTower>) -> Self {
        Self::function(tower, RationalExpr::one())
    }

    /// `D_{x_i}`. Panics if `i` is not a variable index.
    pub fn d(tower: &Arc<FieldTower>, i: usize) -> Self {
        assert!(i < tower.nvars(), "variable index out of range");
        Self::monomial(tower, MultiIndex::var(i), RationalExpr::one())
    }

    /// `D_var` by variable name.
    pub fn d_named(tower: &Arc<FieldTower>, var: &str) -> Result<Self> {
        Ok(Self::d(tower, tower.var_index(var)?))
    }

    pub fn monomial(tower: &Arc<FieldTower>, idx: MultiIndex, c: RationalExpr) -> Self {
        let mut op = Self::zero(tower);
        op.add_term(idx, c);
        op
    }

    pub fn from_terms<I>(tower: &Arc<FieldTower>, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, RationalExpr)>,
    {
        let mut op = Self::zero(tower);
        for (i, c) in terms {
            op.add_term(i, c);
        }
        op
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    /// Terms in ascending index order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &RationalExpr)> {
        self.terms.iter()
    }

    /// Terms in canonical (descending) order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&MultiIndex, &RationalExpr)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> RationalExpr {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    /// Coefficient of `D_{x_i}`.
    pub fn coeff_of_d(&self, i: usize) -> RationalExpr {
        self.coeff(&MultiIndex::var(i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Order of the operator; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next_back().map(MultiIndex::order)
    }

    /// The function when the operator has order at most zero.
    pub fn as_function(&self) -> Option<RationalExpr> {
        match self.order() {
            None => Some(RationalExpr::zero()),
            Some(0) => Some(self.coeff(&MultiIndex::zero())),
            _ => None,
        }
    }

    /// Highest exponent of `D_{x_i}` among the terms.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|k| k.exp(i)).max().unwrap_or(0)
    }

    /// Terms of maximal order.
    pub fn top_part(&self) -> Lpdo {
        let ord = self.order();
        Lpdo {
            tower: self.tower.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| Some(k.order()) == ord)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of order strictly below `ord`.
    pub fn below_order(&self, ord: u32) -> Lpdo {
        Lpdo {
            tower: self.tower.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.order() < ord)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add_term(&mut self, idx: MultiIndex, c: RationalExpr) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_tower(&self, other: &Lpdo) -> Result<()> {
        if same_tower(&self.tower, &other.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn checked_add(&self, other: &Lpdo) -> Result<Lpdo> {
        self.check_tower(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Lpdo) -> Result<Lpdo> {
        self.checked_add(&-other)
    }

    /// `f * self`: left multiplication by a function.
    pub fn scale(&self, f: &RationalExpr) -> Lpdo {
        if f.is_zero() {
            return Lpdo::zero(&self.tower);
        }
        Lpdo {
            tower: self.tower.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * f))
                .collect(),
        }
    }

    /// `self + f`.
    pub fn add_function(&self, f: &RationalExpr) -> Lpdo {
        let mut out = self.clone();
        out.add_term(MultiIndex::zero(), f.clone());
        out
    }

    /// The composition `self ∘ other`, expanded by the Leibniz rule.
    pub fn compose(&self, other: &Lpdo) -> Result<Lpdo> {
        self.check_tower(other)?;
        let tower = &*self.tower;
        let mut acc: HashMap<MultiIndex, Vec<RationalExpr>> = HashMap::new();
        for (beta, b) in &other.terms {
            let mut cache: HashMap<MultiIndex, RationalExpr> = HashMap::new();
            cache.insert(MultiIndex::zero(), b.clone());
            for (alpha, a) in &self.terms {
                for (gamma, binom) in alpha.sub_indices() {
                    let db = derivative_cached(tower, &mut cache, &gamma);
                    if db.is_zero() {
                        continue;
                    }
                    let idx = alpha.sub(&gamma).expect("gamma <= alpha").add(beta);
                    let mut c = a * &db;
                    if binom != BigInt::from(1) {
                        c = &c * &RationalExpr::from_bigint(binom);
                    }
                    acc.entry(idx).or_default().push(c);
                }
            }
        }
        let mut out = Lpdo::zero(&self.tower);
        for (idx, parts) in acc {
            let s = sum_exprs(parts);
            if !s.is_zero() {
                out.terms.insert(idx, s);
            }
        }
        Ok(out)
    }

    /// `[self, other] = self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &Lpdo) -> Result<Lpdo> {
        self.compose(other)?.checked_sub(&other.compose(self)?)
    }

    /// Action on a function.
    pub fn apply(&self, f: &RationalExpr) -> RationalExpr {
        let mut cache = HashMap::new();
        cache.insert(MultiIndex::zero(), f.clone());
        let parts = self
            .terms
            .iter()
            .map(|(alpha, a)| a * &derivative_cached(&self.tower, &mut cache, alpha))
            .collect();
        sum_exprs(parts)
    }

    /// Applies the map to every coefficient, dropping zeros.
    pub fn map_coeffs<F>(&self, mut f: F) -> Result<Lpdo>
    where
        F: FnMut(&RationalExpr) -> Result<RationalExpr>,
    {
        let mut out = Lpdo::zero(&self.tower);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c)?);
        }
        Ok(out)
    }

    /// The same operator over a tower that extends this one (same variables,
    /// possibly more generators).
    pub fn lift(&self, tower: &Arc<FieldTower>) -> Result<Lpdo> {
        let ok = tower.vars() == self.tower.vars()
            && tower.generators().len() >= self.tower.generators().len()
            && tower.generators()[..self.tower.generators().len()] == *self.tower.generators();
        if !ok {
            return Err(Error::TowerMismatch);
        }
        Ok(Lpdo {
            tower: tower.clone(),
            terms: self.terms.clone(),
        })
    }

    /// True when every coefficient is independent of variable `i`, counting
    /// generators with a nonzero partial in `i` as dependent.
    pub fn coefficients_free_of(&self, i: usize) -> bool {
        self.terms
            .values()
            .all(|c| self.tower.derive(c, i).is_zero())
    }
}

/// `D^gamma f`, memoized over sub-indices.
pub(crate) fn derivative_cached(
    tower: &FieldTower,
    cache: &mut HashMap<MultiIndex, RationalExpr>,
    gamma: &MultiIndex,
) -> RationalExpr {
    if let Some(v) = cache.get(gamma) {
        return v.clone();
    }
    let i = gamma.vars().last().expect("nonzero index has a variable");
    let prev = gamma.with_exp(i, gamma.exp(i) - 1);
    let base = derivative_cached(tower, cache, &prev);
    let v = if base.is_zero() {
        base
    } else {
        tower.derive(&base, i)
    };
    cache.insert(gamma.clone(), v.clone());
    v
}

/// Sums by pairing terms, which keeps intermediate denominators small.
pub(crate) fn sum_exprs(mut parts: Vec<RationalExpr>) -> RationalExpr {
    parts.retain(|p| !p.is_zero());
    if parts.is_empty() {
        return RationalExpr::zero();
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().expect("nonempty")
}

impl Neg for &Lpdo {
    type Output = Lpdo;
    fn neg(self) -> Lpdo {
        Lpdo {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl Neg for Lpdo {
    type Output = Lpdo;
    fn neg(self) -> Lpdo {
        -&self
    }
}

// The operator traits panic on a tower mismatch; use the `checked_*` methods
// or `compose` where that can happen.
impl Add for &Lpdo {
    type Output = Lpdo;
    fn add(self, rhs: &Lpdo) -> Lpdo {
        self.checked_add(rhs).expect("operators from different towers")
    }
}

impl Sub for &Lpdo {
    type Output = Lpdo;
    fn sub(self, rhs: &Lpdo) -> Lpdo {
        self.checked_sub(rhs).expect("operators from different towers")
    }
}

impl Mul for &Lpdo {
    type Output = Lpdo;
    fn mul(self, rhs: &Lpdo) -> Lpdo {
        self.compose(rhs).expect("operators from different towers")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Lpdo {
            type Output = Lpdo;
            fn $m(self, rhs: Lpdo) -> Lpdo {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Lpdo> for Lpdo {
            type Output = Lpdo;
            fn $m(self, rhs: &Lpdo) -> Lpdo {
                (&self).$m(rhs)
            }
        }
        impl $tr<Lpdo> for &Lpdo {
            type Output = Lpdo;
            fn $m(self, rhs: Lpdo) -> Lpdo {
                self.$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
