// Darboux transformations from seed solutions, for hyperbolic and
// parabolic operators, and the Euler-Darboux transformation.

use std::sync::Arc;

use ilt::classical::darboux::{darboux_hyperbolic, darboux_parabolic, euler_darboux};
use ilt::parse::{parse_expr, parse_operator};
use ilt::{FieldTower, RationalExpr};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let t = Arc::new(FieldTower::new(["x", "y"])?);
    let e = |s: &str| parse_expr(s, &t);
    let zero = RationalExpr::zero();

    // Dx*Dy u = 0 with one seed, then two
    let one = darboux_hyperbolic(&t, &zero, &zero, &zero, &[e("x + y")?])?;
    println!("one seed:  M = {}, L1 = {}", one.m, one.l1);
    let two = darboux_hyperbolic(&t, &zero, &zero, &zero, &[e("x + y")?, e("x^2 + y")?])?;
    println!("two seeds: M = {}, L1 = {}", two.m, two.l1);

    // heat operator Dx^2 + Dy
    let heat = darboux_parabolic(&t, &zero, &RationalExpr::one(), &zero, &[e("x")?])?;
    println!("heat:      M = {}, H = {}, L1 = {}", heat.m, heat.h, heat.l1);

    let ed = euler_darboux(&parse_operator("Dx^2", &t)?, &parse_operator("Dy", &t)?, &e("x")?, &zero)?;
    assert_eq!(ed.l1, heat.l1);
    println!("Euler-Darboux agrees: L1 = {}", ed.l1);

    for cert in [&one, &two, &heat, &ed] {
        assert!(cert.check()?.all_hold());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
