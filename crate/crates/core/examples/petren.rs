// Petrén transformation seeded by a transcendental function, declared as a
// generator `t` with `t_y = t`.

use std::sync::Arc;

use ilt::classical::petren::{petren_operator, petren_transform};
use ilt::parse::parse_expr;
use ilt::{FieldTower, RationalExpr};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let base = FieldTower::new(["x", "y"])?;
    // the new generator takes the next symbol index
    let g = RationalExpr::symbol(base.nsymbols());
    let tower = base.declare_generator("t", &[("y", g)])?;
    let t = Arc::new(tower);
    let e = |s: &str| parse_expr(s, &t);

    // (Dy^2 - 1) t = 0
    let a = [e("-1")?, e("0")?, e("1")?];
    let b = [e("x")?, e("0")?, e("y")?];
    println!("L = {}", petren_operator(&t, &a, &b)?);
    let cert = petren_transform(&t, &a, &b, &e("t")?)?;
    println!("M = {}\nL1 = {}", cert.m, cert.l1);
    assert!(cert.check()?.all_hold());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
