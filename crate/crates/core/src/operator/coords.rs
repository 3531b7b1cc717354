use crate::error::{Error, Result};
use crate::field::RationalExpr;
use crate::linalg;

use super::Lpdo;

impl Lpdo {
    /// The gauge transform `lambda^{-1} ∘ self ∘ lambda`.
    pub fn conjugate(&self, lambda: &RationalExpr) -> Result<Lpdo> {
        if lambda.is_zero() {
            return Err(Error::ZeroGauge);
        }
        let t = self.tower();
        let inner = self.compose(&Lpdo::function(t, lambda.clone()))?;
        Ok(inner.scale(&lambda.inv()?))
    }

    /// Pushforward under a change of coordinates.
    ///
    /// `fwd[i]` gives the new coordinate `X_i` in terms of the old ones and
    /// `inv[i]` the old coordinate `x_i` in terms of the new ones; the new
    /// coordinates reuse the variable names. Both compositions must reduce
    /// to the identity and the Jacobian must be invertible. Coefficients are
    /// composed with `inv` and `D_{x_j} = sum_i (d X_i / d x_j) D_{X_i}`.
    pub fn change_vars(&self, fwd: &[RationalExpr], inv: &[RationalExpr]) -> Result<Lpdo> {
        let tower = self.tower().clone();
        let n = tower.nvars();
        for map in [fwd, inv] {
            if map.len() != n {
                return Err(Error::CoordinateArity {
                    expected: n,
                    got: map.len(),
                });
            }
        }
        let generator_in = |f: &RationalExpr| f.symbols().into_iter().find(|&s| s >= n);
        let offending = fwd
            .iter()
            .chain(inv)
            .chain(self.terms.values())
            .find_map(generator_in);
        if let Some(s) = offending {
            return Err(Error::GeneratorInCoordinateChange(
                tower.symbol_name(s).to_string(),
            ));
        }
        for i in 0..n {
            let x = RationalExpr::symbol(i);
            if fwd[i].substitute(inv)? != x || inv[i].substitute(fwd)? != x {
                return Err(Error::NotInverse);
            }
        }
        let jac: Vec<Vec<RationalExpr>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| tower.derive(&fwd[i], j).substitute(inv))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        if linalg::determinant(&jac).is_zero() {
            return Err(Error::SingularJacobian);
        }
        let images: Vec<Lpdo> = (0..n)
            .map(|j| {
                let mut p = Lpdo::zero(&tower);
                for (i, row) in jac.iter().enumerate() {
                    p = &p + &Lpdo::d(&tower, i).scale(&row[j]);
                }
                p
            })
            .collect();
        let mut out = Lpdo::zero(&tower);
        for (idx, c) in &self.terms {
            let mut term = Lpdo::function(&tower, c.substitute(inv)?);
            for (j, &e) in idx.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = term.compose(&images[j])?;
                }
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }
}
