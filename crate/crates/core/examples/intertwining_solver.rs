// Finds `L1, M1` with `M1*L = L1*M` for a first-order `M`, certifies the
// left lcm, and normalizes the result into a transformation.

use std::sync::Arc;

use ilt::parse::{parse_expr, parse_operator};
use ilt::solver::{certify_lclm, first_order_to_ilt, kernel_check, solve_intertwining, SolutionStatus};
use ilt::FieldTower;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let t = Arc::new(FieldTower::new(["x", "y", "z"])?);
    let l = parse_operator("x^2*Dx*Dy + x*y*Dx*Dz - x^3*Dz^2 + Dx + 2*x*Dy + 2*y*Dz + 2/x", &t)?;
    let m = parse_operator("Dx + 2/x", &t)?;

    let s = solve_intertwining(&l, &m)?;
    let (Some(l1), Some(m1)) = (&s.l1, &s.m1) else {
        return Err(format!("no intertwining: {:?}", s.status).into());
    };
    assert_eq!(s.status, SolutionStatus::Unique);
    println!("M1 = {m1}\nL1 = {l1}");

    let report = certify_lclm(&l, &m, l1, m1)?;
    println!("lclm certified: {}", report.certified());

    let cert = first_order_to_ilt(&l, &m, m1, l1, 0)?;
    println!("X1 = {}, H = {}, psi = {}", cert.x1, cert.h, t.show(&cert.psi));

    // generic operators admit no such pair
    let generic = parse_operator("Dx*Dy + Dz^2 + x*Dy + y*z", &t)?;
    let none = solve_intertwining(&generic, &parse_operator("Dx + y*Dz + x", &t)?)?;
    println!("generic pair: {:?}", none.status);

    let rows = kernel_check(&l, &m, Some(&cert.h), &[parse_expr("1/x^2", &t)?]);
    for r in rows {
        println!("seed {}: L {}, M {}, H {:?}", t.show(&r.seed), r.l, r.m, r.h);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
