//! Dini transformation: `[H, X2] = kappa H + rho X2` for first-order `H`,
//! `X2`, turned into an ILT by the shift `H~ = H + alpha X2`.

use crate::error::{Error, Result};
use crate::field::RationalExpr;
use crate::ilt::{build_transform, detect_psi, IltCertificate};
use crate::linalg::{self, LinearSolution};
use crate::operator::{Lpdo, MultiIndex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiniData {
    pub kappa: RationalExpr,
    pub rho: RationalExpr,
}

/// Solves `[H, X2] = kappa H + rho X2` coefficientwise.
pub fn dini_decompose(h: &Lpdo, x2: &Lpdo) -> Result<DiniData> {
    if h.order() != Some(1) || x2.order() != Some(1) {
        return Err(Error::NotFirstOrder);
    }
    let (lead, lc) = x2.terms_desc().next().expect("nonzero");
    let f = h.coeff(lead).checked_div(lc)?;
    if h.checked_sub(&x2.scale(&f))?.is_zero() {
        return Err(Error::ProportionalInputs);
    }
    let comm = h.commutator(x2)?;
    let n = h.tower().nvars();
    let indices = std::iter::once(MultiIndex::zero()).chain((0..n).map(MultiIndex::var));
    let (mut rows, mut rhs) = (Vec::new(), Vec::new());
    for idx in indices {
        rows.push(vec![h.coeff(&idx), x2.coeff(&idx)]);
        rhs.push(comm.coeff(&idx));
    }
    if comm.order().is_some_and(|o| o > 1) {
        return Err(Error::NoDecomposition);
    }
    match linalg::solve(&rows, &rhs) {
        LinearSolution::Affine { particular, kernel } if kernel.is_empty() => Ok(DiniData {
            kappa: particular[0].clone(),
            rho: particular[1].clone(),
        }),
        LinearSolution::Affine { .. } => Err(Error::ProportionalInputs),
        LinearSolution::Inconsistent => Err(Error::NoDecomposition),
    }
}

/// The certificate for `L = X1 X2 - H` built from `H~ = H + alpha X2`,
/// `X1~ = X1 + alpha`, where `alpha` solves `[X2, alpha] + kappa alpha = rho`.
pub fn dini_to_ilt(
    x1: &Lpdo,
    x2: &Lpdo,
    h: &Lpdo,
    data: &DiniData,
    alpha: &RationalExpr,
) -> Result<IltCertificate> {
    let tower = x2.tower();
    let comm = h.commutator(x2)?;
    let decomposition = h.scale(&data.kappa).checked_add(&x2.scale(&data.rho))?;
    let mismatch = comm.checked_sub(&decomposition)?;
    if !mismatch.is_zero() {
        return Err(Error::DecompositionMismatch {
            residual: mismatch.to_string(),
        });
    }
    let alpha_op = Lpdo::function(tower, alpha.clone());
    let lhs = x2.commutator(&alpha_op)?.checked_add(&alpha_op.scale(&data.kappa))?;
    let residual = lhs.checked_sub(&Lpdo::function(tower, data.rho.clone()))?;
    if !residual.is_zero() {
        return Err(Error::AlphaNotASolution {
            residual: residual.to_string(),
        });
    }
    let h_t = h.checked_add(&x2.scale(alpha))?;
    let x1_t = x1.add_function(alpha);
    let psi = if h_t.is_zero() {
        data.kappa.clone()
    } else {
        detect_psi(&h_t, x2)?
    };
    if psi != data.kappa {
        return Err(Error::Internal("psi differs from kappa".into()));
    }
    build_transform(&x1_t, x2, &h_t, &psi)
}
