use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldTower, RationalExpr};
use crate::poly::Poly;

use super::{Lpdo, MultiIndex};

/// The principal symbol: the top-order part of an operator with `D_i`
/// replaced by commuting variables `xi_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct PrincipalSymbol {
    tower: Arc<FieldTower>,
    terms: BTreeMap<MultiIndex, RationalExpr>,
}

impl fmt::Debug for PrincipalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sym({})", crate::format::symbol_to_string(self))
    }
}

impl fmt::Display for PrincipalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::symbol_to_string(self))
    }
}

impl PrincipalSymbol {
    fn from_map(tower: &Arc<FieldTower>, terms: BTreeMap<MultiIndex, RationalExpr>) -> Self {
        PrincipalSymbol {
            tower: tower.clone(),
            terms,
        }
    }

    /// A linear form `sum_i c_i xi_i`.
    pub fn linear(tower: &Arc<FieldTower>, coeffs: &[(usize, RationalExpr)]) -> Self {
        let terms = coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (MultiIndex::var(*i), c.clone()))
            .collect();
        Self::from_map(tower, terms)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(MultiIndex::order)
    }

    pub fn coeff(&self, idx: &MultiIndex) -> RationalExpr {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    pub fn terms_desc(&self) -> impl Iterator<Item = (&MultiIndex, &RationalExpr)> {
        self.terms.iter().rev()
    }

    /// Product in the commutative polynomial ring.
    pub fn mul(&self, other: &PrincipalSymbol) -> PrincipalSymbol {
        let mut out: BTreeMap<MultiIndex, RationalExpr> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = out.entry(a.add(b)).or_default();
                *e = &*e + &(ca * cb);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self::from_map(&self.tower, out)
    }

    /// The operator with the same coefficients, `xi_i -> D_i`.
    pub fn to_operator(&self) -> Lpdo {
        Lpdo::from_terms(
            &self.tower,
            self.terms.iter().map(|(k, c)| (k.clone(), c.clone())),
        )
    }
}

impl Lpdo {
    pub fn principal_symbol(&self) -> Result<PrincipalSymbol> {
        if self.is_zero() {
            return Err(Error::ZeroOperator);
        }
        let top = self.top_part();
        Ok(PrincipalSymbol::from_map(self.tower(), top.terms))
    }
}

/// Two linear forms whose product is the principal symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFactors {
    pub first: PrincipalSymbol,
    pub second: PrincipalSymbol,
}

/// Factors the principal symbol `A xi_u^2 + B xi_u xi_v + C xi_v^2` of a
/// second-order operator into two linear forms over the coefficient field.
///
/// Factors are returned rather than roots so that a vanishing `A` needs no
/// special root at infinity.
pub fn factor_symbol_quadratic(l: &Lpdo, u: usize, v: usize) -> Result<QuadraticFactors> {
    let tower = l.tower();
    let sym = l.principal_symbol()?;
    if sym.degree() != Some(2) || u == v {
        return Err(Error::NotQuadratic(sym.to_string()));
    }
    let (iuu, iuv, ivv) = (
        MultiIndex::var_pow(u, 2),
        MultiIndex::var(u).add(&MultiIndex::var(v)),
        MultiIndex::var_pow(v, 2),
    );
    if sym.terms.keys().any(|k| *k != iuu && *k != iuv && *k != ivv) {
        return Err(Error::NotQuadratic(sym.to_string()));
    }
    let (a, b, c) = (sym.coeff(&iuu), sym.coeff(&iuv), sym.coeff(&ivv));
    let (first, second) = if a.is_zero() {
        (
            PrincipalSymbol::linear(tower, &[(u, b), (v, c)]),
            PrincipalSymbol::linear(tower, &[(v, RationalExpr::one())]),
        )
    } else {
        let disc = &(&b * &b) - &(&a * &c).scale(4);
        let root = field_sqrt(&disc).ok_or_else(|| Error::NotAPerfectSquare(tower.show(&disc)))?;
        let two_a = a.scale(2);
        let lp = (&root - &b).checked_div(&two_a)?;
        let lm = (&(-&root) - &b).checked_div(&two_a)?;
        (
            PrincipalSymbol::linear(tower, &[(u, a.clone()), (v, -(&a * &lp))]),
            PrincipalSymbol::linear(tower, &[(u, RationalExpr::one()), (v, -lm)]),
        )
    };
    debug_assert_eq!(first.mul(&second), sym);
    Ok(QuadraticFactors { first, second })
}

/// Square root in the coefficient field: `N/D` is a square iff `N*D` is.
fn field_sqrt(f: &RationalExpr) -> Option<RationalExpr> {
    let nd: Poly = f.numer() * f.denom();
    let s = nd.sqrt()?;
    RationalExpr::from_poly(s)
        .checked_div(&RationalExpr::from_poly(f.denom().clone()))
        .ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower() -> Arc<FieldTower> {
        Arc::new(FieldTower::new(["x", "y"]).unwrap())
    }

    #[test]
    fn symbol_keeps_top_order_only() {
        let t = tower();
        let x = t.symbol("x").unwrap();
        let l = &(&Lpdo::d(&t, 0) * &Lpdo::d(&t, 1)) + &Lpdo::d(&t, 0).scale(&x);
        let s = l.principal_symbol().unwrap();
        assert_eq!(s.to_string(), "xi_x*xi_y");
        assert_eq!(Lpdo::zero(&t).principal_symbol(), Err(Error::ZeroOperator));
    }

    #[test]
    fn factor_mixed_symbol() {
        let t = tower();
        let l = &Lpdo::d(&t, 0) * &Lpdo::d(&t, 1);
        let f = factor_symbol_quadratic(&l, 0, 1).unwrap();
        assert_eq!(f.first.to_string(), "xi_x");
        assert_eq!(f.second.to_string(), "xi_y");
    }

    #[test]
    fn factor_wave_like_symbol() {
        let t = tower();
        let x = t.symbol("x").unwrap();
        let dy2 = Lpdo::monomial(&t, MultiIndex::var_pow(1, 2), -x.pow(2));
        let l = &(&Lpdo::d(&t, 0) * &Lpdo::d(&t, 0)) + &dy2;
        let f = factor_symbol_quadratic(&l, 0, 1).unwrap();
        assert_eq!(f.first.to_string(), "xi_x - x*xi_y");
        assert_eq!(f.second.to_string(), "xi_x + x*xi_y");
    }

    #[test]
    fn non_square_discriminant() {
        let t = tower();
        let x = t.symbol("x").unwrap();
        let dy2 = Lpdo::monomial(&t, MultiIndex::var_pow(1, 2), -x);
        let l = &(&Lpdo::d(&t, 0) * &Lpdo::d(&t, 0)) + &dy2;
        assert!(matches!(
            factor_symbol_quadratic(&l, 0, 1),
            Err(Error::NotAPerfectSquare(_))
        ));
        assert!(matches!(
            factor_symbol_quadratic(&Lpdo::d(&t, 0), 0, 1),
            Err(Error::NotQuadratic(_))
        ));
    }
}
