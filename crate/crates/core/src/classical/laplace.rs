//! Laplace transformations of `D_x D_y + a D_x + b D_y + c`, the cascade
//! method, and gauge transformations.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{hyperbolic, hyperbolic_coefficients, require_plane, X, Y};
use crate::error::{Error, Result};
use crate::field::{FieldTower, RationalExpr};
use crate::ilt::{build_transform, detect_psi, IltCertificate};
use crate::operator::Lpdo;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    X,
    Y,
}

/// The coefficients together with the invariants `h` and `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplaceData {
    pub a: RationalExpr,
    pub b: RationalExpr,
    pub c: RationalExpr,
    pub h: RationalExpr,
    pub k: RationalExpr,
}

/// `h = a_x + ab - c`, `k = b_y + ab - c`.
pub fn laplace_invariants(
    tower: &FieldTower,
    a: &RationalExpr,
    b: &RationalExpr,
    c: &RationalExpr,
) -> Result<LaplaceData> {
    require_plane(tower)?;
    let ab_c = &(a * b) - c;
    Ok(LaplaceData {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        h: &tower.derive(a, X) + &ab_c,
        k: &tower.derive(b, Y) + &ab_c,
    })
}

/// The X-transformation uses `L = (D_x + b)(D_y + a) - h`, the
/// Y-transformation `L = (D_y + a)(D_x + b) - k`.
pub fn laplace_transform(
    tower: &Arc<FieldTower>,
    a: &RationalExpr,
    b: &RationalExpr,
    c: &RationalExpr,
    dir: Direction,
) -> Result<IltCertificate> {
    let data = laplace_invariants(tower, a, b, c)?;
    let dx_b = Lpdo::d(tower, X).add_function(b);
    let dy_a = Lpdo::d(tower, Y).add_function(a);
    let (x1, x2, inv, name) = match dir {
        Direction::X => (dx_b, dy_a, data.h, "h"),
        Direction::Y => (dy_a, dx_b, data.k, "k"),
    };
    if inv.is_zero() {
        return Err(Error::ZeroInvariant(name));
    }
    let h = Lpdo::function(tower, inv);
    let psi = detect_psi(&h, &x2)?;
    build_transform(&x1, &x2, &h, &psi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepStatus {
    Transformed,
    Factored,
    Exhausted,
}

impl StepStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            StepStatus::Transformed => "transformed",
            StepStatus::Factored => "factored",
            StepStatus::Exhausted => "exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeStep {
    pub step: usize,
    pub data: LaplaceData,
    pub status: StepStatus,
    pub certificate: Option<IltCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CascadeOutcome {
    /// The current operator equals `first ∘ second`.
    Factored { first: Lpdo, second: Lpdo },
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeReport {
    pub steps: Vec<CascadeStep>,
    pub outcome: CascadeOutcome,
}

impl CascadeReport {
    pub fn to_json(&self, tower: &FieldTower) -> Value {
        Value::Array(
            self.steps
                .iter()
                .map(|s| {
                    json!({
                        "step": s.step,
                        "a": tower.show(&s.data.a),
                        "b": tower.show(&s.data.b),
                        "c": tower.show(&s.data.c),
                        "h": tower.show(&s.data.h),
                        "k": tower.show(&s.data.k),
                        "status": s.status.as_str(),
                    })
                })
                .collect(),
        )
    }
}

/// Repeats the Laplace transformation in one direction until the relevant
/// invariant vanishes or `max_steps` transformations have been made.
pub fn cascade(
    tower: &Arc<FieldTower>,
    a: &RationalExpr,
    b: &RationalExpr,
    c: &RationalExpr,
    dir: Direction,
    max_steps: usize,
) -> Result<CascadeReport> {
    let (mut a, mut b, mut c) = (a.clone(), b.clone(), c.clone());
    let mut steps = Vec::new();
    for step in 0.. {
        let data = laplace_invariants(tower, &a, &b, &c)?;
        let inv = match dir {
            Direction::X => &data.h,
            Direction::Y => &data.k,
        };
        if inv.is_zero() {
            let dx_b = Lpdo::d(tower, X).add_function(&b);
            let dy_a = Lpdo::d(tower, Y).add_function(&a);
            let (first, second) = match dir {
                Direction::X => (dx_b, dy_a),
                Direction::Y => (dy_a, dx_b),
            };
            debug_assert_eq!(&first * &second, hyperbolic(tower, &a, &b, &c)?);
            steps.push(CascadeStep {
                step,
                data,
                status: StepStatus::Factored,
                certificate: None,
            });
            return Ok(CascadeReport {
                steps,
                outcome: CascadeOutcome::Factored { first, second },
            });
        }
        if step == max_steps {
            steps.push(CascadeStep {
                step,
                data,
                status: StepStatus::Exhausted,
                certificate: None,
            });
            break;
        }
        let cert = laplace_transform(tower, &a, &b, &c, dir)?;
        (a, b, c) = hyperbolic_coefficients(&cert.l1)?;
        steps.push(CascadeStep {
            step,
            data,
            status: StepStatus::Transformed,
            certificate: Some(cert),
        });
    }
    Ok(CascadeReport {
        steps,
        outcome: CascadeOutcome::Exhausted,
    })
}

/// The gauge transformation `L -> lambda^{-1} L lambda` as an ILT with
/// `X2 = lambda^{-1}`, `X1 = L lambda + phi lambda`, `H = phi`.
pub fn gauge_as_ilt(l: &Lpdo, lambda: &RationalExpr, phi: &RationalExpr) -> Result<IltCertificate> {
    if lambda.is_zero() {
        return Err(Error::ZeroGauge);
    }
    let tower = l.tower();
    let lam = Lpdo::function(tower, lambda.clone());
    let x2 = Lpdo::function(tower, lambda.inv()?);
    let x1 = l.compose(&lam)?.checked_add(&lam.scale(phi))?;
    let h = Lpdo::function(tower, phi.clone());
    let psi = if phi.is_zero() {
        RationalExpr::zero()
    } else {
        detect_psi(&h, &x2)?
    };
    build_transform(&x1, &x2, &h, &psi)
}
