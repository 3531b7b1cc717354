// Reads a workspace file, round-trips operators through text and JSON, and
// drives the command line front end in-process.

use ilt::cli::run;
use ilt::format::operator_to_json;
use ilt::parse::operator_from_json;
use ilt::workspace::Workspace;

const TEXT: &str = "\
[vars]
x, y, z
[generators]
g.y = -y*g        # a Gaussian in y
[exprs]
theta = x*g
[operators]
X2 = Dx + 2/x
H = theta*Dz^2
L = (x^2*Dy + 1)*X2 - H
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ws = Workspace::parse(TEXT, &[])?;
    print!("{}", ws.to_text());

    let l = ws.operator("L").ok_or("L is declared")?;
    let json = operator_to_json(l);
    assert_eq!(&operator_from_json(&json, &ws.tower)?, l);
    println!("{json}");

    let (code, out) = run(["ilt", "--json", "compose", "Dx + 2/x", "x^2*Dy + x*y*Dz + 1"]);
    println!("exit {code}\n{out}");
    let (code, out) = run(["ilt", "compose", "Dx/Dy", "Dz"]);
    println!("exit {code}: {out}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
