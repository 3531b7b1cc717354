// Builds the transformation of `L = X1*X2 - H` from a rectifiable seed
// `H~ = Dz^2` and checks every identity of the certificate.

use std::sync::Arc;

use ilt::ilt::{generate, verify_intertwining};
use ilt::parse::{parse_expr, parse_operator};
use ilt::FieldTower;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let t = Arc::new(FieldTower::new(["x", "y", "z"])?);
    let x1 = parse_operator("x^2*Dy + x*y*Dz + 1", &t)?;
    let h_tilde = parse_operator("Dz^2", &t)?;
    let (theta1, theta2) = (parse_expr("x", &t)?, parse_expr("x^2", &t)?);

    // H = theta1*H~*theta2 with x rectified: X2 = theta2^-1 Dx theta2
    let cert = generate(&h_tilde, &theta1, &theta2, &x1, 0, None)?;
    println!("{}", cert.to_text());

    let check = cert.check()?;
    for (name, ok) in &check.identities {
        println!("{}: {name}", if *ok { "pass" } else { "FAIL" });
    }
    let report = verify_intertwining(&cert.m1, &cert.l, &cert.l1, &cert.m)?;
    assert!(check.all_hold() && report.pass());
    println!("(Dx - 1/x) L = L1 (Dx + 2/x): {}", report.product);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
