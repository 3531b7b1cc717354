// Ordinary operators: Euclid's algorithm, the transformation of `L` along
// a first-order `M`, and the Darboux transformation of a Schrödinger
// operator.

use std::sync::Arc;

use ilt::classical::lodo::{lodo_euclid, lodo_transform_as_ilt, schrodinger_darboux};
use ilt::parse::{parse_expr, parse_operator};
use ilt::FieldTower;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let t = Arc::new(FieldTower::new(["x"])?);
    let (l, m) = (parse_operator("Dx^2", &t)?, parse_operator("Dx + x", &t)?);

    let e = lodo_euclid(&l, &m)?;
    println!("gcd = {}\nlclm = {}", e.gcd, e.lclm);
    println!("   = ({})*L = ({})*M", e.m_bar, e.l_bar);

    let cert = lodo_transform_as_ilt(&l, &m)?;
    println!("X1 = {}, H = {}, L1 = {}", cert.x1, cert.h, cert.l1);
    assert!(cert.check()?.all_hold());

    let s = schrodinger_darboux(&t, &parse_expr("x", &t)?)?;
    println!("u = {}, u~ = {}", t.show(&s.u), t.show(&s.u_tilde));
    println!("{}  ->  {}", s.l, s.l_tilde);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
