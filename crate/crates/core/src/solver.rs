//! Finding `(L1, M1)` with `M1 L = L1 M` for a given first-order `M`.
//!
//! With `M1 = sum_{|g|<=1} m_g D^g` and `L1 = T + sum_{|b|<ord L} l_b D^b`,
//! where `T` is the top-order part of `L`, the relation is linear in the
//! unknown functions:
//!
//! `sum m_g (D^g L) - sum l_b (D^b M) = T M`.
//!
//! Matching coefficients of every derivative gives a linear system over the
//! coefficient field.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::RationalExpr;
use crate::ilt::{build_transform, detect_psi, same_symbol, IltCertificate};
use crate::linalg::{self, LinearSolution};
use crate::operator::{Lpdo, MultiIndex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionStatus {
    Unique,
    NonUnique(usize),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwiningSolution {
    pub status: SolutionStatus,
    /// The particular solution (reduced echelon, free unknowns zero).
    pub l1: Option<Lpdo>,
    pub m1: Option<Lpdo>,
    /// Directions `(dL1, dM1)` spanning the homogeneous solutions.
    pub kernel: Vec<(Lpdo, Lpdo)>,
    /// Set when the solved `M1` has order below one.
    pub diagnostic: Option<String>,
}

impl IntertwiningSolution {
    pub fn to_json(&self) -> Value {
        let status = match &self.status {
            SolutionStatus::Unique => json!("unique"),
            SolutionStatus::NonUnique(d) => json!({ "non_unique": d }),
            SolutionStatus::None => json!("none"),
        };
        json!({
            "status": status,
            "L1": self.l1.as_ref().map(|o| o.to_string()),
            "M1": self.m1.as_ref().map(|o| o.to_string()),
            "kernel": self.kernel.iter().map(|(l, m)| json!({"dL1": l.to_string(), "dM1": m.to_string()})).collect::<Vec<_>>(),
            "diagnostic": self.diagnostic,
        })
    }
}

/// All indices of order at most `ord`, in descending canonical order.
fn indices_up_to(nvars: usize, ord: u32) -> Vec<MultiIndex> {
    let mut out = vec![MultiIndex::zero()];
    let mut frontier = vec![MultiIndex::zero()];
    for _ in 0..ord {
        let mut next = Vec::new();
        for idx in &frontier {
            let start = idx.vars().last().unwrap_or(0);
            for v in start..nvars {
                next.push(idx.add(&MultiIndex::var(v)));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out.reverse();
    out
}

pub fn solve_intertwining(l: &Lpdo, m: &Lpdo) -> Result<IntertwiningSolution> {
    if m.order() != Some(1) {
        return Err(Error::NotFirstOrderM);
    }
    let p = match l.order() {
        Some(p) if p >= 1 => p,
        _ => return Err(Error::LowOrderL),
    };
    let tower = l.tower().clone();
    let n = tower.nvars();
    let gammas = indices_up_to(n, 1);
    let betas = indices_up_to(n, p - 1);
    let top = l.top_part();

    let mut columns: Vec<Lpdo> = Vec::with_capacity(gammas.len() + betas.len());
    for g in &gammas {
        columns.push(Lpdo::monomial(&tower, g.clone(), RationalExpr::one()).compose(l)?);
    }
    for b in &betas {
        columns.push(-Lpdo::monomial(&tower, b.clone(), RationalExpr::one()).compose(m)?);
    }
    let rhs_op = top.compose(m)?;

    let mut rows_idx: Vec<MultiIndex> = columns
        .iter()
        .chain(std::iter::once(&rhs_op))
        .flat_map(|c| c.terms().map(|(k, _)| k.clone()).collect::<Vec<_>>())
        .collect();
    rows_idx.sort();
    rows_idx.dedup();
    rows_idx.reverse();

    let matrix: Vec<Vec<RationalExpr>> = rows_idx
        .iter()
        .map(|k| columns.iter().map(|c| c.coeff(k)).collect())
        .collect();
    let rhs: Vec<RationalExpr> = rows_idx.iter().map(|k| rhs_op.coeff(k)).collect();

    let assemble = |v: &[RationalExpr], with_top: bool| -> (Lpdo, Lpdo) {
        let m1 = Lpdo::from_terms(&tower, gammas.iter().cloned().zip(v[..gammas.len()].iter().cloned()));
        let low = Lpdo::from_terms(&tower, betas.iter().cloned().zip(v[gammas.len()..].iter().cloned()));
        let l1 = if with_top { &top + &low } else { low };
        (l1, m1)
    };

    match linalg::solve(&matrix, &rhs) {
        LinearSolution::Inconsistent => Ok(IntertwiningSolution {
            status: SolutionStatus::None,
            l1: None,
            m1: None,
            kernel: Vec::new(),
            diagnostic: None,
        }),
        LinearSolution::Affine { particular, kernel } => {
            let (l1, m1) = assemble(&particular, true);
            let residual = m1.compose(l)?.checked_sub(&l1.compose(m)?)?;
            if !residual.is_zero() {
                return Err(Error::Internal(format!(
                    "solved system leaves residual {residual}"
                )));
            }
            let diagnostic = (m1.order() != Some(1))
                .then(|| format!("M1 = {m1} has order below one"));
            let kernel: Vec<(Lpdo, Lpdo)> = kernel.iter().map(|v| assemble(v, false)).collect();
            let status = if kernel.is_empty() {
                SolutionStatus::Unique
            } else {
                SolutionStatus::NonUnique(kernel.len())
            };
            Ok(IntertwiningSolution {
                status,
                l1: Some(l1),
                m1: Some(m1),
                kernel,
                diagnostic,
            })
        }
    }
}

/// Which hypotheses of the lLCM characterization hold for a quadruple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LclmReport {
    pub product: bool,
    pub orders: bool,
    pub symbols: bool,
    pub not_divisible: bool,
}

impl LclmReport {
    /// All hypotheses hold, so `M1 L = L1 M` is the left lcm of `L` and `M`.
    pub fn certified(&self) -> bool {
        self.product && self.orders && self.symbols && self.not_divisible
    }

    pub fn to_json(&self) -> Value {
        json!({
            "product": self.product,
            "orders": self.orders,
            "symbols": self.symbols,
            "not_divisible": self.not_divisible,
            "certified": self.certified(),
        })
    }
}

pub fn certify_lclm(l: &Lpdo, m: &Lpdo, l1: &Lpdo, m1: &Lpdo) -> Result<LclmReport> {
    let product = m1.compose(l)? == l1.compose(m)?;
    let orders = l.order() == l1.order() && m.order() == m1.order();
    let symbols = same_symbol(l, l1);
    let not_divisible = match m.order() {
        Some(1) => {
            let var = (0..m.tower().nvars())
                .find(|&i| !m.coeff_of_d(i).is_zero())
                .expect("first-order operator has a derivation");
            !l.right_divide(m, var)?.1.is_zero()
        }
        _ => false,
    };
    Ok(LclmReport {
        product,
        orders,
        symbols,
        not_divisible,
    })
}

/// Turns a first-order intertwining `M1 L = L1 M` into an ILT of `L` with
/// `X2 = alpha^{-1} M`, where `alpha` is the coefficient of `D_{x_i}` in `M`;
/// the transformed operator is `alpha^{-1} L1 alpha`.
pub fn first_order_to_ilt(l: &Lpdo, m: &Lpdo, m1: &Lpdo, l1: &Lpdo, i: usize) -> Result<IltCertificate> {
    let tower = l.tower().clone();
    if i >= tower.nvars() {
        return Err(Error::UnknownVariable(format!("#{i}")));
    }
    let residual = m1.compose(l)?.checked_sub(&l1.compose(m)?)?;
    if !residual.is_zero() {
        return Err(Error::NotIntertwining {
            residual: residual.to_string(),
        });
    }
    if m.order() != Some(1) {
        return Err(Error::NotFirstOrderM);
    }
    let alpha = m.coeff_of_d(i);
    if alpha.is_zero() {
        return Err(Error::ZeroAlphaCoefficient(tower.symbol_name(i).to_string()));
    }
    let alpha_inv = alpha.inv()?;
    let x2 = m.scale(&alpha_inv);
    let l1_conj = l1.conjugate(&alpha)?;
    let psi = m1
        .scale(&alpha_inv)
        .checked_sub(&x2)?
        .as_function()
        .ok_or_else(|| Error::Internal("M1 and M differ in their principal parts".into()))?;
    let (x1, r) = l.right_divide(&x2, i)?;
    let h = -r;
    if !h.is_zero() && detect_psi(&h, &x2).map_err(|e| Error::Internal(e.to_string()))? != psi {
        return Err(Error::Internal("psi from the commutator differs from M1".into()));
    }
    let cert = build_transform(&x1, &x2, &h, &psi).map_err(|e| Error::Internal(e.to_string()))?;
    if cert.l1 != l1_conj {
        return Err(Error::Internal("transformed operator differs from the conjugate of L1".into()));
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelRow {
    pub seed: RationalExpr,
    pub l: bool,
    pub m: bool,
    pub h: Option<bool>,
}

/// For each seed: does `L`, `M` and (when given) `H` annihilate it.
pub fn kernel_check(l: &Lpdo, m: &Lpdo, h: Option<&Lpdo>, seeds: &[RationalExpr]) -> Vec<KernelRow> {
    seeds
        .iter()
        .map(|z| KernelRow {
            seed: z.clone(),
            l: l.apply(z).is_zero(),
            m: m.apply(z).is_zero(),
            h: h.map(|h| h.apply(z).is_zero()),
        })
        .collect()
}
