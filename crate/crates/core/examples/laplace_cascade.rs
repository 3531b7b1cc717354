// Laplace invariants and the cascade of Laplace transformations of
// `Dx*Dy + a*Dx + b*Dy + c`.

use std::sync::Arc;

use ilt::classical::laplace::{cascade, laplace_invariants, laplace_transform, CascadeOutcome, Direction};
use ilt::parse::parse_expr;
use ilt::FieldTower;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let t = Arc::new(FieldTower::new(["x", "y"])?);
    let e = |s: &str| parse_expr(s, &t);

    let (a, b, c) = (e("x*y")?, e("0")?, e("0")?);
    let inv = laplace_invariants(&t, &a, &b, &c)?;
    println!("h = {}, k = {}", t.show(&inv.h), t.show(&inv.k));

    let cert = laplace_transform(&t, &a, &b, &c, Direction::X)?;
    println!("L  = {}\nL1 = {}\npsi = {}", cert.l, cert.l1, t.show(&cert.psi));
    assert!(cert.check()?.all_hold());
    // k = 0, so the other direction is undefined
    println!("Y direction: {}", laplace_transform(&t, &a, &b, &c, Direction::Y).unwrap_err());

    let report = cascade(&t, &e("2/(x + y)")?, &b, &c, Direction::X, 4)?;
    for s in &report.steps {
        println!(
            "step {}: h = {}, k = {} [{}]",
            s.step,
            t.show(&s.data.h),
            t.show(&s.data.k),
            s.status.as_str()
        );
        if let Some(cert) = &s.certificate {
            assert!(cert.check()?.all_hold());
        }
    }
    if let CascadeOutcome::Factored { first, second } = &report.outcome {
        println!("factored: ({first})*({second})");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
