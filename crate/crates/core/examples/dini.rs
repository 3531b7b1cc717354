// Dini transformation: decompose `[H, X2] = kappa*H + rho*X2`, then use a
// solution `alpha` of `[X2, alpha] + kappa*alpha = rho`.

use std::sync::Arc;

use ilt::classical::dini::{dini_decompose, dini_to_ilt};
use ilt::parse::{parse_expr, parse_operator};
use ilt::FieldTower;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let t = Arc::new(FieldTower::new(["x", "y", "z"])?);
    let op = |s: &str| parse_operator(s, &t);
    let (x1, x2, h) = (op("Dy")?, op("Dx")?, op("x*Dx + Dz")?);

    let d = dini_decompose(&h, &x2)?;
    println!("kappa = {}, rho = {}", t.show(&d.kappa), t.show(&d.rho));

    let cert = dini_to_ilt(&x1, &x2, &h, &d, &parse_expr("-x", &t)?)?;
    println!("H~ = {}, psi = {}", cert.h, t.show(&cert.psi));
    println!("L  = {}\nL1 = {}", cert.l, cert.l1);
    assert!(cert.check()?.all_hold());

    let bad = dini_to_ilt(&x1, &x2, &h, &d, &parse_expr("x", &t)?);
    println!("alpha = x: {}", bad.unwrap_err());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
