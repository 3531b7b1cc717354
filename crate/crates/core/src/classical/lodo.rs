//! Ordinary operators: Euclid's algorithm, least common multiples, and the
//! Darboux transformation of the one-dimensional Schrödinger operator.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldTower, RationalExpr};
use crate::ilt::{build_transform, detect_psi, IltCertificate};
use crate::operator::Lpdo;

/// Output of the extended Euclidean algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclidData {
    pub var: usize,
    /// Monic right gcd `G`.
    pub gcd: Lpdo,
    /// Monic left lcm `K = m_bar L = l_bar M`.
    pub lclm: Lpdo,
    pub l_bar: Lpdo,
    pub m_bar: Lpdo,
    /// `s L + t M = G`; when `G = 1`, `t M = 1 (mod L)`.
    pub s: Lpdo,
    pub t: Lpdo,
}

/// The single derivation shared by two ordinary operators.
fn common_var(l: &Lpdo, m: &Lpdo) -> Result<usize> {
    let mut var = None;
    for op in [l, m] {
        for (idx, _) in op.terms() {
            for v in idx.vars() {
                match var {
                    None => var = Some(v),
                    Some(w) if w == v => {}
                    Some(_) => return Err(Error::NotUnivariate),
                }
            }
        }
    }
    Ok(var.unwrap_or(0))
}

pub fn lodo_euclid(l: &Lpdo, m: &Lpdo) -> Result<EuclidData> {
    let var = common_var(l, m)?;
    if l.is_zero() || m.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let tower = l.tower();
    let (mut r0, mut r1) = (l.clone(), m.clone());
    let (mut s0, mut s1) = (Lpdo::one(tower), Lpdo::zero(tower));
    let (mut t0, mut t1) = (Lpdo::zero(tower), Lpdo::one(tower));
    while !r1.is_zero() {
        let (q, r) = r0.right_divide_univariate(&r1, var)?;
        let s2 = s0.checked_sub(&q.compose(&s1)?)?;
        let t2 = t0.checked_sub(&q.compose(&t1)?)?;
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    // Now s0 L + t0 M = r0 = G and s1 L + t1 M = 0.
    let g_norm = r0.leading_coeff().inv()?;
    let k = s1.compose(l)?;
    let k_norm = k.leading_coeff().inv()?;
    Ok(EuclidData {
        var,
        gcd: r0.scale(&g_norm),
        lclm: k.scale(&k_norm),
        l_bar: (-&t1).scale(&k_norm),
        m_bar: s1.scale(&k_norm),
        s: s0.scale(&g_norm),
        t: t0.scale(&g_norm),
    })
}

/// `L = Q M + R` with a first-order `M`; the certificate uses `X1 = Q`,
/// `X2 = M`, `H = -R`.
pub fn lodo_transform_as_ilt(l: &Lpdo, m: &Lpdo) -> Result<IltCertificate> {
    let var = common_var(l, m)?;
    if m.order() != Some(1) {
        return Err(Error::NotFirstOrder);
    }
    let (q, r) = l.right_divide_univariate(m, var)?;
    if r.is_zero() {
        return Err(Error::DivisibleByM);
    }
    let h = -r;
    let psi = detect_psi(&h, m)?;
    build_transform(&q, m, &h, &psi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchrodingerData {
    /// `u = v^2 + v_x`.
    pub u: RationalExpr,
    /// `u~ = v^2 - v_x`.
    pub u_tilde: RationalExpr,
    /// `-D_x^2 + u`.
    pub l: Lpdo,
    /// `-D_x^2 + u~`.
    pub l_tilde: Lpdo,
    /// `X1 = A^T`, `X2 = A`, `H = 0`.
    pub certificate: IltCertificate,
    /// `X1 = A^T + 1`, `X2 = A`, `H = A`.
    pub alternate: IltCertificate,
}

/// Darboux transformation of `-D_x^2 + u` factored as `A^T A` with
/// `A = -D_x + v`, `A^T = D_x + v`.
pub fn schrodinger_darboux(tower: &Arc<FieldTower>, v: &RationalExpr) -> Result<SchrodingerData> {
    let x = 0;
    let vx = tower.derive(v, x);
    let v2 = v * v;
    let u = &v2 + &vx;
    let u_tilde = &v2 - &vx;
    let dx = Lpdo::d(tower, x);
    let dx2 = &dx * &dx;
    let l = (-&dx2).add_function(&u);
    let l_tilde = (-&dx2).add_function(&u_tilde);
    let a = (-&dx).add_function(v);
    let at = dx.add_function(v);
    let zero = RationalExpr::zero();
    let certificate = build_transform(&at, &a, &Lpdo::zero(tower), &zero)?;
    let alternate = build_transform(&at.add_function(&RationalExpr::one()), &a, &a, &detect_psi(&a, &a)?)?;
    if certificate.l != l || certificate.l1 != l_tilde || alternate.l1 != l_tilde {
        return Err(Error::Internal("Schrödinger factorization mismatch".into()));
    }
    Ok(SchrodingerData {
        u,
        u_tilde,
        l,
        l_tilde,
        certificate,
        alternate,
    })
}
