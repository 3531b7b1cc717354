use crate::error::{Error, Result};
use crate::field::RationalExpr;

use super::{Lpdo, MultiIndex};

impl Lpdo {
    /// Right division by a first-order `m`, eliminating `D_var`:
    /// `self = q ∘ m + r` where no term of `r` contains `D_var`.
    ///
    /// Each round removes the term with the largest `D_var` exponent (ties
    /// broken by index order); the new terms it creates carry a smaller
    /// exponent, so the loop terminates. Degrees in other derivations may
    /// grow.
    pub fn right_divide(&self, m: &Lpdo, var: usize) -> Result<(Lpdo, Lpdo)> {
        self.check_tower(m)?;
        if m.order() != Some(1) {
            return Err(Error::NotFirstOrder);
        }
        let lead = m.coeff_of_d(var);
        if lead.is_zero() {
            return Err(Error::VarCoefficientZero(
                self.tower().symbol_name(var).to_string(),
            ));
        }
        let lead_inv = lead.inv()?;
        let mut q = Lpdo::zero(self.tower());
        let mut r = self.clone();
        loop {
            let pick = r
                .terms
                .iter()
                .filter(|(k, _)| k.exp(var) > 0)
                .max_by(|a, b| a.0.exp(var).cmp(&b.0.exp(var)).then(a.0.cmp(b.0)))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((idx, c)) = pick else { break };
            let qi = idx.with_exp(var, idx.exp(var) - 1);
            let term = Lpdo::monomial(self.tower(), qi, &c * &lead_inv);
            r = r.checked_sub(&term.compose(m)?)?;
            q = q.checked_add(&term)?;
        }
        Ok((q, r))
    }

    /// Division in the ring of ordinary operators in `D_var`:
    /// `self = q ∘ m + r` with `ord r < ord m`. Both operators may only
    /// involve the derivation `D_var`.
    pub fn right_divide_univariate(&self, m: &Lpdo, var: usize) -> Result<(Lpdo, Lpdo)> {
        self.check_tower(m)?;
        if !self.is_univariate_in(var) || !m.is_univariate_in(var) {
            return Err(Error::NotUnivariate);
        }
        let dm = m.order().ok_or(Error::DivisionByZero)?;
        let lead_inv = m.coeff(&MultiIndex::var_pow(var, dm)).inv()?;
        let mut q = Lpdo::zero(self.tower());
        let mut r = self.clone();
        while let Some(dr) = r.order().filter(|&d| d >= dm) {
            let c = r.coeff(&MultiIndex::var_pow(var, dr));
            let term = Lpdo::monomial(self.tower(), MultiIndex::var_pow(var, dr - dm), &c * &lead_inv);
            r = r.checked_sub(&term.compose(m)?)?;
            q = q.checked_add(&term)?;
        }
        Ok((q, r))
    }

    /// True when every term involves at most the derivation `D_var`.
    pub fn is_univariate_in(&self, var: usize) -> bool {
        self.terms.keys().all(|k| k.vars().all(|v| v == var))
    }

    /// Normalizes a nonzero operator to leading coefficient one in the
    /// canonical term order.
    pub fn monic(&self) -> Result<Lpdo> {
        let (_, c) = self.terms.iter().next_back().ok_or(Error::ZeroOperator)?;
        Ok(self.scale(&c.inv()?))
    }

    /// The leading coefficient in canonical term order.
    pub fn leading_coeff(&self) -> RationalExpr {
        self.terms
            .iter()
            .next_back()
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::FieldTower;

    fn tower() -> Arc<FieldTower> {
        Arc::new(FieldTower::new(["x", "y"]).unwrap())
    }

    #[test]
    fn second_derivative_by_shifted_derivation() {
        let t = tower();
        let x = t.symbol("x").unwrap();
        let dx = Lpdo::d(&t, 0);
        let m = dx.add_function(&x);
        let (q, r) = (&dx * &dx).right_divide(&m, 0).unwrap();
        assert_eq!(q, dx.add_function(&-&x));
        assert_eq!(r, Lpdo::function(&t, &x.pow(2) - &RationalExpr::one()));
        assert_eq!(&(&q * &m) + &r, &dx * &dx);
    }

    #[test]
    fn divisor_divides_itself() {
        let t = tower();
        let y = t.symbol("y").unwrap();
        let m = &Lpdo::d(&t, 0) + &Lpdo::d(&t, 1).scale(&y);
        let (q, r) = m.right_divide(&m, 0).unwrap();
        assert_eq!(q, Lpdo::one(&t));
        assert!(r.is_zero());
    }

    #[test]
    fn preconditions() {
        let t = tower();
        let dx = Lpdo::d(&t, 0);
        assert_eq!(dx.right_divide(&(&dx * &dx), 0), Err(Error::NotFirstOrder));
        assert_eq!(
            dx.right_divide(&Lpdo::d(&t, 1), 0),
            Err(Error::VarCoefficientZero("x".into()))
        );
    }

    #[test]
    fn univariate_division() {
        let t = tower();
        let x = t.symbol("x").unwrap();
        let dx = Lpdo::d(&t, 0);
        let l = &(&dx * &dx) * &dx;
        let m = (&dx * &dx).add_function(&x);
        let (q, r) = l.right_divide_univariate(&m, 0).unwrap();
        assert!(r.order().unwrap_or(0) < 2);
        assert_eq!(&(&q * &m) + &r, l);
        assert_eq!(
            l.right_divide_univariate(&Lpdo::d(&t, 1), 0),
            Err(Error::NotUnivariate)
        );
    }
}
