//! Petrén transformation of `sum_i A_i D_x D_y^i + sum_i B_i D_y^i`.

use std::sync::Arc;

use super::{require_plane, X, Y};
use crate::error::{Error, Result};
use crate::field::{FieldTower, RationalExpr};
use crate::ilt::{build_transform, detect_psi, IltCertificate};
use crate::operator::{Lpdo, MultiIndex};

fn dy_poly(tower: &Arc<FieldTower>, coeffs: &[RationalExpr], with_dx: bool) -> Lpdo {
    let base = if with_dx {
        MultiIndex::var(X)
    } else {
        MultiIndex::zero()
    };
    Lpdo::from_terms(
        tower,
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (base.add(&MultiIndex::var_pow(Y, i as u32)), c.clone())),
    )
}

/// The operator `sum_i A_i D_x D_y^i + sum_i B_i D_y^i`.
pub fn petren_operator(
    tower: &Arc<FieldTower>,
    a: &[RationalExpr],
    b: &[RationalExpr],
) -> Result<Lpdo> {
    require_plane(tower)?;
    Ok(&dy_poly(tower, a, true) + &dy_poly(tower, b, false))
}

/// Builds the certificate from a seed `alpha0` with `sum A_i D_y^i alpha0 = 0`
/// and `L alpha0 != 0`.
pub fn petren_transform(
    tower: &Arc<FieldTower>,
    a: &[RationalExpr],
    b: &[RationalExpr],
    alpha0: &RationalExpr,
) -> Result<IltCertificate> {
    let l = petren_operator(tower, a, b)?;
    if alpha0.is_zero() {
        return Err(Error::SeedNotAnnihilated);
    }
    let a_hat = dy_poly(tower, a, false);
    if !a_hat.apply(alpha0).is_zero() {
        return Err(Error::SeedNotAnnihilated);
    }
    if l.apply(alpha0).is_zero() {
        return Err(Error::DegeneratePetren);
    }
    let x2 = Lpdo::d(tower, Y).add_function(&-tower.derive(alpha0, Y).checked_div(alpha0)?);
    let (q, rem) = a_hat.right_divide(&x2, Y)?;
    if !rem.is_zero() {
        return Err(Error::Internal("remainder of the D_x part is nonzero".into()));
    }
    let n = a.len().max(b.len());
    let zero = RationalExpr::zero();
    let b_hat_coeffs: Vec<RationalExpr> = (0..n)
        .map(|i| {
            let ai = a.get(i).unwrap_or(&zero);
            let bi = b.get(i).unwrap_or(&zero);
            bi - &tower.derive(ai, X)
        })
        .collect();
    let b_hat = dy_poly(tower, &b_hat_coeffs, false);
    let (r_op, r) = b_hat.right_divide(&x2, Y)?;
    let r = r
        .as_function()
        .ok_or_else(|| Error::Internal("remainder is not a function".into()))?;
    let x1 = Lpdo::d(tower, X).compose(&q)?.checked_add(&r_op)?;
    let h = Lpdo::function(tower, -r);
    let psi = detect_psi(&h, &x2)?;
    let cert = build_transform(&x1, &x2, &h, &psi)?;
    if cert.l != l {
        return Err(Error::Internal("Petrén factorization mismatch".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_seed_gives_plain_laplace() {
        let t = Arc::new(FieldTower::new(["x", "y"]).unwrap());
        let one = RationalExpr::one();
        let zero = RationalExpr::zero();
        let c = petren_transform(&t, &[zero.clone(), one.clone()], &[-&one, zero], &one).unwrap();
        assert_eq!(c.x2, Lpdo::d(&t, 1));
    }

    #[test]
    fn seed_conditions() {
        let t = Arc::new(FieldTower::new(["x", "y"]).unwrap());
        let one = RationalExpr::one();
        let zero = RationalExpr::zero();
        let y = t.symbol("y").unwrap();
        assert_eq!(
            petren_transform(&t, &[zero.clone(), one.clone()], &[zero.clone(), zero.clone()], &y),
            Err(Error::SeedNotAnnihilated)
        );
        assert_eq!(
            petren_transform(&t, &[zero.clone(), one], &[zero.clone(), zero], &RationalExpr::from_int(3)),
            Err(Error::DegeneratePetren)
        );
    }
}
