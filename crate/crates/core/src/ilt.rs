//! Intertwining Laplace transformations.
//!
//! An ILT of `L` is a representation `L = X1 X2 - H` with `[H, X2] = psi H`
//! for a function `psi`. It produces `L1 = X2 X1 + psi X1 - H` together with
//! the intertwining relation `(X2 + psi) L = L1 X2`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldTower, RationalExpr};
use crate::operator::Lpdo;

/// A transformation together with everything needed to check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IltCertificate {
    pub x1: Lpdo,
    pub x2: Lpdo,
    pub h: Lpdo,
    pub psi: RationalExpr,
    pub l: Lpdo,
    pub l1: Lpdo,
    pub m: Lpdo,
    pub m1: Lpdo,
}

/// Outcome of checking the defining identities of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    /// `(identity, holds)` in a fixed order.
    pub identities: Vec<(&'static str, bool)>,
}

impl CertificateCheck {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|(_, ok)| *ok)
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        self.identities.iter().find(|(_, ok)| !ok).map(|(n, _)| *n)
    }
}

/// Same order and same top-order part.
pub fn same_symbol(a: &Lpdo, b: &Lpdo) -> bool {
    a.order() == b.order() && a.top_part() == b.top_part()
}

impl IltCertificate {
    pub fn tower(&self) -> &Arc<FieldTower> {
        self.l.tower()
    }

    /// Re-checks all identities from scratch.
    pub fn check(&self) -> Result<CertificateCheck> {
        let psi_op = Lpdo::function(self.tower(), self.psi.clone());
        let factorization = self.x1.compose(&self.x2)?.checked_sub(&self.h)? == self.l;
        let transformed = self
            .x2
            .compose(&self.x1)?
            .checked_add(&psi_op.compose(&self.x1)?)?
            .checked_sub(&self.h)?
            == self.l1;
        let condition = self.h.compose(&self.x2)?
            == self.x2.checked_add(&psi_op)?.compose(&self.h)?;
        let intertwining = self.m1.compose(&self.l)? == self.l1.compose(&self.m)?;
        let symbol = same_symbol(&self.l, &self.l1);
        let shape = self.m == self.x2 && self.m1 == self.x2.checked_add(&psi_op)?;
        Ok(CertificateCheck {
            identities: vec![
                ("L = X1*X2 - H", factorization),
                ("L1 = X2*X1 + psi*X1 - H", transformed),
                ("H*X2 = (X2 + psi)*H", condition),
                ("M1*L = L1*M", intertwining),
                ("Sym L = Sym L1", symbol),
                ("M = X2, M1 = X2 + psi", shape),
            ],
        })
    }

    /// `[X1, X2] - psi X1 - (L - L1)`, which vanishes for every valid
    /// certificate.
    pub fn commutator_residual(&self) -> Result<Lpdo> {
        let lhs = self
            .x1
            .commutator(&self.x2)?
            .checked_sub(&self.x1.scale(&self.psi))?;
        lhs.checked_sub(&self.l.checked_sub(&self.l1)?)
    }

    pub fn to_json(&self) -> Value {
        let t = self.tower();
        json!({
            "X1": self.x1.to_string(),
            "X2": self.x2.to_string(),
            "H": self.h.to_string(),
            "psi": t.show(&self.psi),
            "L": self.l.to_string(),
            "L1": self.l1.to_string(),
            "M": self.m.to_string(),
            "M1": self.m1.to_string(),
            "verified": true,
        })
    }

    /// Multi-line text report.
    pub fn to_text(&self) -> String {
        let t = self.tower();
        format!(
            "X1 = {}\nX2 = {}\nH = {}\npsi = {}\nL = {}\nL1 = {}\nM = {}\nM1 = {}\nverified: true",
            self.x1,
            self.x2,
            self.h,
            t.show(&self.psi),
            self.l,
            self.l1,
            self.m,
            self.m1
        )
    }
}

/// `H = X1 X2 - L`.
pub fn h_from_factors(l: &Lpdo, x1: &Lpdo, x2: &Lpdo) -> Result<Lpdo> {
    x1.compose(x2)?.checked_sub(l)
}

/// The function `psi` with `[H, X2] = psi H`, read off the largest term of
/// `H` and then verified on every term.
pub fn detect_psi(h: &Lpdo, x2: &Lpdo) -> Result<RationalExpr> {
    let (idx, lead) = h.terms_desc().next().ok_or(Error::ZeroH)?;
    let c = h.commutator(x2)?;
    let psi = c.coeff(idx).checked_div(lead)?;
    let residual = c.checked_sub(&h.scale(&psi))?;
    if residual.is_zero() {
        Ok(psi)
    } else {
        Err(Error::NoIlt {
            residual: residual.to_string(),
        })
    }
}

/// Assembles and verifies the certificate for `(X1, X2, H, psi)`.
pub fn build_transform(
    x1: &Lpdo,
    x2: &Lpdo,
    h: &Lpdo,
    psi: &RationalExpr,
) -> Result<IltCertificate> {
    let tower = x2.tower().clone();
    match x2.order() {
        Some(k) if k > 1 => return Err(Error::HigherOrderIntertwiner(k)),
        None => return Err(Error::ZeroOperator),
        _ => {}
    }
    let psi_op = Lpdo::function(&tower, psi.clone());
    let m1 = x2.checked_add(&psi_op)?;
    let residual = h.compose(x2)?.checked_sub(&m1.compose(h)?)?;
    if !residual.is_zero() {
        return Err(Error::ConditionViolated {
            residual: residual.to_string(),
        });
    }
    let l = x1.compose(x2)?.checked_sub(h)?;
    let l1 = x2
        .compose(x1)?
        .checked_add(&x1.scale(psi))?
        .checked_sub(h)?;
    let cert = IltCertificate {
        x1: x1.clone(),
        x2: x2.clone(),
        h: h.clone(),
        psi: psi.clone(),
        l,
        l1,
        m: x2.clone(),
        m1,
    };
    let check = cert.check()?;
    if let Some(name) = check.first_failure() {
        return Err(Error::CertificateFailure(name.to_string()));
    }
    Ok(cert)
}

/// Outcome of checking `M1 L = L1 M` together with the order and symbol
/// conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwiningReport {
    pub product: bool,
    pub residual: Lpdo,
    pub orders: bool,
    pub symbols: bool,
}

impl IntertwiningReport {
    pub fn pass(&self) -> bool {
        self.product && self.orders && self.symbols
    }

    pub fn to_json(&self) -> Value {
        json!({
            "product": self.product,
            "orders": self.orders,
            "symbols": self.symbols,
            "pass": self.pass(),
            "residual": self.residual.to_string(),
        })
    }
}

pub fn verify_intertwining(m1: &Lpdo, l: &Lpdo, l1: &Lpdo, m: &Lpdo) -> Result<IntertwiningReport> {
    let residual = m1.compose(l)?.checked_sub(&l1.compose(m)?)?;
    Ok(IntertwiningReport {
        product: residual.is_zero(),
        residual,
        orders: l.order() == l1.order() && m.order() == m1.order(),
        symbols: same_symbol(l, l1),
    })
}

/// A coordinate change given as new-in-old and old-in-new maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateMaps {
    pub fwd: Vec<RationalExpr>,
    pub inv: Vec<RationalExpr>,
}

/// Builds an ILT from a seed `H~` whose coefficients do not depend on
/// `rect_var`.
///
/// With `H = theta1 H~ theta2` and `X2 = D + alpha`, `alpha = theta2'/theta2`,
/// the condition holds with `psi = -theta1'/theta1 - alpha` (primes are
/// derivatives in `rect_var`). An optional coordinate change is applied to
/// `X2`, `H` and `psi`; `X1` is taken as given in the final coordinates.
pub fn generate(
    h_tilde: &Lpdo,
    theta1: &RationalExpr,
    theta2: &RationalExpr,
    x1: &Lpdo,
    rect_var: usize,
    maps: Option<&CoordinateMaps>,
) -> Result<IltCertificate> {
    let tower = h_tilde.tower().clone();
    if rect_var >= tower.nvars() {
        return Err(Error::UnknownVariable(format!("#{rect_var}")));
    }
    if !h_tilde.coefficients_free_of(rect_var) {
        return Err(Error::SeedDependsOnVar(
            tower.symbol_name(rect_var).to_string(),
        ));
    }
    if theta1.is_zero() || theta2.is_zero() {
        return Err(Error::ZeroTheta);
    }
    let h = h_tilde
        .compose(&Lpdo::function(&tower, theta2.clone()))?
        .scale(theta1);
    let alpha = tower.derive(theta2, rect_var).checked_div(theta2)?;
    let psi = &(-tower.derive(theta1, rect_var).checked_div(theta1)?) - &alpha;
    let x2 = Lpdo::d(&tower, rect_var).add_function(&alpha);
    let (x2, h, psi) = match maps {
        None => (x2, h, psi),
        Some(m) => (
            x2.change_vars(&m.fwd, &m.inv)?,
            h.change_vars(&m.fwd, &m.inv)?,
            psi.substitute(&m.inv)?,
        ),
    };
    build_transform(x1, &x2, &h, &psi)
}
