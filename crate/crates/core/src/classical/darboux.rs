//! First-order Darboux transformations built from seed solutions, and the
//! Euler-Darboux transformation.

use std::sync::Arc;

use super::{hyperbolic, parabolic, psi_or_internal, X, Y};
use crate::error::{Error, Result};
use crate::field::{FieldTower, RationalExpr};
use crate::ilt::{build_transform, IltCertificate};
use crate::operator::{Lpdo, MultiIndex};

fn check_seeds(l: &Lpdo, seeds: &[RationalExpr]) -> Result<()> {
    let tower = l.tower();
    if seeds.is_empty() || seeds.len() > 2 {
        return Err(Error::DegenerateSeeds("expected one or two seeds".into()));
    }
    for z in seeds {
        if z.is_zero() {
            return Err(Error::DegenerateSeeds("zero seed".into()));
        }
        if !l.apply(z).is_zero() {
            return Err(Error::SeedNotASolution(tower.show(z)));
        }
    }
    Ok(())
}

/// `D_x - (z1)_x / z1`, which annihilates `z1`.
fn one_seed_operator(tower: &Arc<FieldTower>, z1: &RationalExpr) -> Result<Lpdo> {
    let r = -tower.derive(z1, X).checked_div(z1)?;
    Ok(Lpdo::d(tower, X).add_function(&r))
}

/// `D_x + q D_y + r` annihilating both seeds, from the 3x3 determinant with
/// rows `(u, z1, z2)` and columns `(u, u_y, u_x)` divided by the `(z, z_y)`
/// minor.
fn two_seed_operator(tower: &Arc<FieldTower>, z1: &RationalExpr, z2: &RationalExpr) -> Result<Lpdo> {
    let (z1x, z1y) = (tower.derive(z1, X), tower.derive(z1, Y));
    let (z2x, z2y) = (tower.derive(z2, X), tower.derive(z2, Y));
    let wx = &(z1 * &z2x) - &(&z1x * z2);
    let wy = &(z1 * &z2y) - &(&z1y * z2);
    if wx.is_zero() || wy.is_zero() {
        return Err(Error::DegenerateSeeds(
            "the (z, z_x) and (z, z_y) determinants must both be nonzero".into(),
        ));
    }
    let q = -wx.checked_div(&wy)?;
    let r = (&(&z1y * &z2x) - &(&z1x * &z2y)).checked_div(&wy)?;
    Ok(Lpdo::from_terms(
        tower,
        [
            (MultiIndex::var(X), RationalExpr::one()),
            (MultiIndex::var(Y), q),
            (MultiIndex::zero(), r),
        ],
    ))
}

/// Divides `L` by `M` eliminating `D_x` and takes `X1 = Q`, `H = -R`.
fn certificate_from_divisor(l: &Lpdo, m: &Lpdo, seeds: &[RationalExpr]) -> Result<IltCertificate> {
    let (q, r) = l.right_divide(m, X)?;
    let h = -r;
    for z in seeds {
        if !m.apply(z).is_zero() || !h.apply(z).is_zero() {
            return Err(Error::Internal("seed is not in the common kernel".into()));
        }
    }
    let psi = psi_or_internal(&h, m)?;
    build_transform(&q, m, &h, &psi)
}

/// Darboux transformation of `D_x D_y + a D_x + b D_y + c` from one or two
/// seed solutions.
pub fn darboux_hyperbolic(
    tower: &Arc<FieldTower>,
    a: &RationalExpr,
    b: &RationalExpr,
    c: &RationalExpr,
    seeds: &[RationalExpr],
) -> Result<IltCertificate> {
    let l = hyperbolic(tower, a, b, c)?;
    check_seeds(&l, seeds)?;
    let m = match seeds {
        [z1] => {
            let alpha = b + &tower.derive(z1, X).checked_div(z1)?;
            if alpha.is_zero() {
                return Err(Error::DegenerateSeeds("b + (z1)_x/z1 vanishes".into()));
            }
            one_seed_operator(tower, z1)?
        }
        [z1, z2] => two_seed_operator(tower, z1, z2)?,
        _ => unreachable!("seed count checked"),
    };
    certificate_from_divisor(&l, &m, seeds)
}

/// Darboux transformation of `D_x^2 + a D_x + b D_y + c` with `b != 0`: one
/// seed gives `M = D_x + r`, two seeds give `M = D_x + q D_y + r`.
pub fn darboux_parabolic(
    tower: &Arc<FieldTower>,
    a: &RationalExpr,
    b: &RationalExpr,
    c: &RationalExpr,
    seeds: &[RationalExpr],
) -> Result<IltCertificate> {
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    let l = parabolic(tower, a, b, c)?;
    check_seeds(&l, seeds)?;
    let m = match seeds {
        [z1] => one_seed_operator(tower, z1)?,
        [z1, z2] => two_seed_operator(tower, z1, z2)?,
        _ => unreachable!("seed count checked"),
    };
    certificate_from_divisor(&l, &m, seeds)
}

/// Euler-Darboux transformation of `L = A + B`, where `A` is an ordinary
/// operator in `x` with coefficients in `x` only and `B` involves neither
/// `D_x` nor `x`. The seed satisfies `A h = c h` for a constant `c`.
pub fn euler_darboux(a: &Lpdo, b: &Lpdo, h: &RationalExpr, c: &RationalExpr) -> Result<IltCertificate> {
    let tower = a.tower().clone();
    let nv = tower.nvars();
    if !a.is_univariate_in(X) {
        return Err(Error::UnexpectedShape("an ordinary operator in D_x".into()));
    }
    for v in 1..nv {
        if !a.coefficients_free_of(v) {
            return Err(Error::CoefficientDependsOnVar(
                "A".into(),
                tower.symbol_name(v).to_string(),
            ));
        }
    }
    if b.degree_in(X) > 0 {
        return Err(Error::UnexpectedShape("B without D_x".into()));
    }
    if !b.coefficients_free_of(X) {
        return Err(Error::CoefficientDependsOnVar(
            "B".into(),
            tower.symbol_name(X).to_string(),
        ));
    }
    if !c.is_constant() {
        return Err(Error::UnexpectedShape("a constant eigenvalue c".into()));
    }
    if h.is_zero() {
        return Err(Error::DegenerateSeeds("zero seed".into()));
    }
    if a.apply(h) != c * h {
        return Err(Error::SeedNotEigen);
    }
    let m = one_seed_operator(&tower, h)?;
    let (q, phi) = a.right_divide(&m, X)?;
    if phi != Lpdo::function(&tower, c.clone()) {
        return Err(Error::Internal("remainder of A differs from c".into()));
    }
    let hh = -b.add_function(c);
    let psi = psi_or_internal(&hh, &m)?;
    build_transform(&q, &m, &hh, &psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower() -> Arc<FieldTower> {
        Arc::new(FieldTower::new(["x", "y"]).unwrap())
    }

    #[test]
    fn one_seed_hyperbolic() {
        let t = tower();
        let (x, y) = (t.symbol("x").unwrap(), t.symbol("y").unwrap());
        let z = RationalExpr::zero();
        let s = &x + &y;
        let c = darboux_hyperbolic(&t, &z, &z, &z, std::slice::from_ref(&s)).unwrap();
        let si = s.inv().unwrap();
        assert_eq!(c.psi, si);
        assert_eq!(c.m, Lpdo::d(&t, 0).add_function(&-&si));
        let expected = (&Lpdo::d(&t, 0) * &Lpdo::d(&t, 1))
            + Lpdo::d(&t, 1).scale(&si)
            + Lpdo::function(&t, -si.pow(2));
        assert_eq!(c.l1, expected);
    }

    #[test]
    fn seed_must_solve() {
        let t = tower();
        let x = t.symbol("x").unwrap();
        let z = RationalExpr::zero();
        let r = darboux_hyperbolic(&t, &z, &z, &RationalExpr::one(), &[x]);
        assert!(matches!(r, Err(Error::SeedNotASolution(_))));
    }

    #[test]
    fn heat_equation_one_seed() {
        let t = tower();
        let x = t.symbol("x").unwrap();
        let z = RationalExpr::zero();
        let one = RationalExpr::one();
        let c = darboux_parabolic(&t, &z, &one, &z, std::slice::from_ref(&x)).unwrap();
        assert!(c.psi.is_zero());
        assert_eq!(c.h, -Lpdo::d(&t, 1));
        let dx = Lpdo::d(&t, 0);
        let expected = (&dx * &dx) + Lpdo::d(&t, 1) + Lpdo::function(&t, x.pow(2).inv().unwrap().scale(-2));
        assert_eq!(c.l1, expected);
        assert_eq!(darboux_parabolic(&t, &z, &z, &z, &[x]), Err(Error::ZeroB));
    }

    #[test]
    fn euler_darboux_rejects_non_eigen_seed() {
        let t = tower();
        let x = t.symbol("x").unwrap();
        let dx = Lpdo::d(&t, 0);
        let r = euler_darboux(&(&dx * &dx), &Lpdo::d(&t, 1), &x.pow(3), &RationalExpr::zero());
        assert_eq!(r, Err(Error::SeedNotEigen));
    }
}
