//! Classical transformations recast as ILT certificates.
//!
//! Plane transformations act on the first two variables of the tower, which
//! play the roles of `x` and `y`.

pub mod darboux;
pub mod dini;
pub mod laplace;
pub mod lodo;
pub mod petren;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldTower, RationalExpr};
use crate::operator::{Lpdo, MultiIndex};

pub(crate) const X: usize = 0;
pub(crate) const Y: usize = 1;

pub(crate) fn require_plane(tower: &FieldTower) -> Result<()> {
    if tower.nvars() < 2 {
        return Err(Error::UnexpectedShape(
            "a plane operator (at least two variables)".into(),
        ));
    }
    Ok(())
}

/// `D_x D_y + a D_x + b D_y + c`.
pub fn hyperbolic(
    tower: &Arc<FieldTower>,
    a: &RationalExpr,
    b: &RationalExpr,
    c: &RationalExpr,
) -> Result<Lpdo> {
    require_plane(tower)?;
    Ok(Lpdo::from_terms(
        tower,
        [
            (MultiIndex::var(X).add(&MultiIndex::var(Y)), RationalExpr::one()),
            (MultiIndex::var(X), a.clone()),
            (MultiIndex::var(Y), b.clone()),
            (MultiIndex::zero(), c.clone()),
        ],
    ))
}

/// `D_x^2 + a D_x + b D_y + c`.
pub fn parabolic(
    tower: &Arc<FieldTower>,
    a: &RationalExpr,
    b: &RationalExpr,
    c: &RationalExpr,
) -> Result<Lpdo> {
    require_plane(tower)?;
    Ok(Lpdo::from_terms(
        tower,
        [
            (MultiIndex::var_pow(X, 2), RationalExpr::one()),
            (MultiIndex::var(X), a.clone()),
            (MultiIndex::var(Y), b.clone()),
            (MultiIndex::zero(), c.clone()),
        ],
    ))
}

/// Reads `(a, b, c)` back from `D_x D_y + a D_x + b D_y + c`.
pub fn hyperbolic_coefficients(l: &Lpdo) -> Result<(RationalExpr, RationalExpr, RationalExpr)> {
    require_plane(l.tower())?;
    let mixed = MultiIndex::var(X).add(&MultiIndex::var(Y));
    let allowed = [
        mixed.clone(),
        MultiIndex::var(X),
        MultiIndex::var(Y),
        MultiIndex::zero(),
    ];
    if !l.coeff(&mixed).is_one() || l.terms().any(|(k, _)| !allowed.contains(k)) {
        return Err(Error::UnexpectedShape("Dx*Dy + a*Dx + b*Dy + c".into()));
    }
    Ok((
        l.coeff(&MultiIndex::var(X)),
        l.coeff(&MultiIndex::var(Y)),
        l.coeff(&MultiIndex::zero()),
    ))
}

/// `psi` for the certificate, reporting a non-proportional commutator as an
/// internal inconsistency of the construction.
pub(crate) fn psi_or_internal(h: &Lpdo, x2: &Lpdo) -> Result<RationalExpr> {
    if h.is_zero() {
        return Ok(RationalExpr::zero());
    }
    crate::ilt::detect_psi(h, x2).map_err(|e| match e {
        Error::NoIlt { .. } => Error::PsiNotProportional,
        other => other,
    })
}
