//! Command line front end. [`run`] returns the exit code and the text to
//! print, so it can be driven from tests without a process.
//!
//! Exit codes: 0 on success, 1 when a mathematical condition or check fails,
//! 2 for malformed input.

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classical::darboux::{darboux_hyperbolic, darboux_parabolic, euler_darboux};
use crate::classical::dini::{dini_decompose, dini_to_ilt};
use crate::classical::laplace::{
    cascade, gauge_as_ilt, laplace_invariants, laplace_transform, CascadeOutcome, Direction,
};
use crate::classical::lodo::{lodo_euclid, lodo_transform_as_ilt, schrodinger_darboux};
use crate::classical::petren::petren_transform;
use crate::error::{Error, Result};
use crate::field::{FieldTower, RationalExpr};
use crate::ilt::{detect_psi, generate, CoordinateMaps, IltCertificate};
use crate::operator::{factor_symbol_quadratic, Lpdo};
use crate::parse::{parse_expr_with, parse_operator_with, Bindings};
use crate::solver::{certify_lclm, first_order_to_ilt, kernel_check, solve_intertwining};
use crate::workspace::Workspace;

#[derive(Parser, Debug)]
#[command(name = "ilt", version, about = "Intertwining Laplace transformations of linear PDE operators")]
pub struct Cli {
    /// Workspace file declaring variables, generators and named entries.
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Variables used when no workspace declares them.
    #[arg(long, global = true, value_delimiter = ',', default_value = "x,y,z")]
    vars: Vec<String>,
    /// Step limit for the Laplace cascade.
    #[arg(long, global = true, default_value_t = 10)]
    max_steps: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Composition A*B*... (applied right to left).
    Compose {
        #[arg(required = true, num_args = 2..)]
        ops: Vec<String>,
    },
    /// [A, B] = A*B - B*A.
    Commutator { a: String, b: String },
    /// L = Q*M + R with a first-order M; R is free of D<var>.
    Divide {
        l: String,
        m: String,
        #[arg(long)]
        var: Option<String>,
    },
    /// Principal symbol, optionally factored as a quadratic form in two
    /// variables.
    Symbol {
        l: String,
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        factor: Option<Vec<String>>,
    },
    /// Applies an operator to a function.
    Apply { l: String, f: String },
    /// Change of variables: --fwd gives the new variables in terms of the
    /// old, --inv the old in terms of the new.
    Chvar {
        l: String,
        #[arg(long, value_delimiter = ',', required = true)]
        fwd: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        inv: Vec<String>,
    },
    /// Generate and verify ILT certificates.
    #[command(subcommand)]
    Ilt(IltCommand),
    #[command(subcommand)]
    Laplace(LaplaceCommand),
    /// Gauge transformation lambda^-1*L*lambda as an ILT.
    Gauge {
        l: String,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "0")]
        phi: String,
    },
    /// Ordinary operators in one derivation.
    #[command(subcommand)]
    Lodo(LodoCommand),
    /// Darboux transformations from seed solutions.
    #[command(subcommand)]
    Darboux(DarbouxCommand),
    /// Euler-Darboux transformation of A + B from an eigenfunction h of A.
    EulerDarboux {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value = "0")]
        c: String,
    },
    /// Petrén transformation of sum A_i*Dx*Dy^i + sum B_i*Dy^i.
    Petren {
        /// A_0, A_1, ... separated by commas.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<String>,
        #[arg(long)]
        seed: String,
    },
    /// Dini transformations of first-order H and X2.
    #[command(subcommand)]
    Dini(DiniCommand),
    /// Solve M1*L = L1*M for a first-order M.
    #[command(subcommand)]
    Intertwine(IntertwineCommand),
}

#[derive(Subcommand, Debug)]
enum IltCommand {
    /// Builds an ILT from H~ free of the rectifying variable.
    Generate {
        #[arg(long)]
        x1: String,
        #[arg(long)]
        h_tilde: String,
        #[arg(long, default_value = "1")]
        theta1: String,
        #[arg(long, default_value = "1")]
        theta2: String,
        #[arg(long, default_value = "x")]
        rect_var: String,
        #[arg(long, value_delimiter = ',', requires = "inv")]
        fwd: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',', requires = "fwd")]
        inv: Option<Vec<String>>,
    },
    /// Checks every identity of a transformation. Defaults read X1, X2, H,
    /// psi, L and L1 from the workspace.
    Verify {
        #[arg(long, default_value = "X1")]
        x1: String,
        #[arg(long, default_value = "X2")]
        x2: String,
        #[arg(long, default_value = "H")]
        h: String,
        #[arg(long)]
        psi: Option<String>,
        #[arg(long)]
        l: Option<String>,
        #[arg(long)]
        l1: Option<String>,
    },
}

#[derive(Args, Debug)]
struct Coeffs {
    #[arg(long, default_value = "0")]
    a: String,
    #[arg(long, default_value = "0")]
    b: String,
    #[arg(long, default_value = "0")]
    c: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Dir {
    #[value(name = "X")]
    X,
    #[value(name = "Y")]
    Y,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Direction {
        match d {
            Dir::X => Direction::X,
            Dir::Y => Direction::Y,
        }
    }
}

/// Operators `Dx*Dy + a*Dx + b*Dy + c`.
#[derive(Subcommand, Debug)]
enum LaplaceCommand {
    Invariants {
        #[command(flatten)]
        coeffs: Coeffs,
    },
    Transform {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long, value_enum, default_value = "X")]
        dir: Dir,
    },
    Cascade {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long, value_enum, default_value = "X")]
        dir: Dir,
    },
}

#[derive(Subcommand, Debug)]
enum LodoCommand {
    /// Right gcd, left lcm and Bezout cofactors.
    Euclid { l: String, m: String },
    /// L = Q*M + R read as an ILT.
    Transform { l: String, m: String },
}

#[derive(Subcommand, Debug)]
enum DarbouxCommand {
    /// -Dx^2 + v^2 + v_x factored through A = -Dx + v.
    Schrodinger {
        #[arg(long)]
        v: String,
    },
    /// Dx*Dy + a*Dx + b*Dy + c with one or two seeds.
    Hyperbolic {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long = "seed", required = true)]
        seeds: Vec<String>,
    },
    /// Dx^2 + a*Dx + b*Dy + c with one or two seeds.
    Parabolic {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long = "seed", required = true)]
        seeds: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum DiniCommand {
    /// kappa, rho with [H, X2] = kappa*H + rho*X2.
    Decompose {
        #[arg(long)]
        h: String,
        #[arg(long)]
        x2: String,
    },
    /// The ILT of X1*X2 - H shifted by alpha.
    ToIlt {
        #[arg(long)]
        x1: String,
        #[arg(long)]
        x2: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Subcommand, Debug)]
enum IntertwineCommand {
    /// Finds L1, M1 with M1*L = L1*M for a first-order M.
    Solve { l: String, m: String },
    /// Checks the left lcm characterization of M1*L = L1*M.
    Certify { l: String, m: String, l1: String, m1: String },
    /// Turns M1*L = L1*M into an ILT by normalizing the coefficient of
    /// D<var> in M.
    Normalize {
        l: String,
        m: String,
        m1: String,
        l1: String,
        #[arg(long)]
        var: Option<String>,
    },
    /// Which of L, M, H annihilate each seed.
    Kernel {
        l: String,
        m: String,
        #[arg(long)]
        h: Option<String>,
        #[arg(long = "seed", required = true)]
        seeds: Vec<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Compose { .. } => "compose",
            Command::Commutator { .. } => "commutator",
            Command::Divide { .. } => "divide",
            Command::Symbol { .. } => "symbol",
            Command::Apply { .. } => "apply",
            Command::Chvar { .. } => "chvar",
            Command::Ilt(IltCommand::Generate { .. }) => "ilt generate",
            Command::Ilt(IltCommand::Verify { .. }) => "ilt verify",
            Command::Laplace(LaplaceCommand::Invariants { .. }) => "laplace invariants",
            Command::Laplace(LaplaceCommand::Transform { .. }) => "laplace transform",
            Command::Laplace(LaplaceCommand::Cascade { .. }) => "laplace cascade",
            Command::Gauge { .. } => "gauge",
            Command::Lodo(LodoCommand::Euclid { .. }) => "lodo euclid",
            Command::Lodo(LodoCommand::Transform { .. }) => "lodo transform",
            Command::Darboux(DarbouxCommand::Schrodinger { .. }) => "darboux schrodinger",
            Command::Darboux(DarbouxCommand::Hyperbolic { .. }) => "darboux hyperbolic",
            Command::Darboux(DarbouxCommand::Parabolic { .. }) => "darboux parabolic",
            Command::EulerDarboux { .. } => "euler-darboux",
            Command::Petren { .. } => "petren",
            Command::Dini(DiniCommand::Decompose { .. }) => "dini decompose",
            Command::Dini(DiniCommand::ToIlt { .. }) => "dini to-ilt",
            Command::Intertwine(IntertwineCommand::Solve { .. }) => "intertwine solve",
            Command::Intertwine(IntertwineCommand::Certify { .. }) => "intertwine certify",
            Command::Intertwine(IntertwineCommand::Normalize { .. }) => "intertwine normalize",
            Command::Intertwine(IntertwineCommand::Kernel { .. }) => "intertwine kernel",
        }
    }
}

/// What a command produced, before rendering.
struct Outcome {
    pass: bool,
    result: Value,
    text: String,
    residual: Option<String>,
}

impl Outcome {
    fn ok(result: Value, text: String) -> Outcome {
        Outcome {
            pass: true,
            result,
            text,
            residual: None,
        }
    }

    fn certificate(c: &IltCertificate) -> Outcome {
        Outcome::ok(c.to_json(), c.to_text())
    }
}

struct Ctx {
    ws: Workspace,
    bindings: Bindings,
}

impl Ctx {
    fn tower(&self) -> &Arc<FieldTower> {
        &self.ws.tower
    }

    fn op(&self, text: &str) -> Result<Lpdo> {
        parse_operator_with(text, self.tower(), &self.bindings)
    }

    fn expr(&self, text: &str) -> Result<RationalExpr> {
        parse_expr_with(text, self.tower(), &self.bindings)
    }

    fn exprs(&self, texts: &[String]) -> Result<Vec<RationalExpr>> {
        texts.iter().map(|t| self.expr(t)).collect()
    }

    fn var(&self, name: &str) -> Result<usize> {
        self.tower().var_index(name)
    }

    fn show(&self, f: &RationalExpr) -> String {
        self.tower().show(f)
    }

    fn coeffs(&self, c: &Coeffs) -> Result<(RationalExpr, RationalExpr, RationalExpr)> {
        Ok((self.expr(&c.a)?, self.expr(&c.b)?, self.expr(&c.c)?))
    }

    /// The first variable whose derivation appears in the first-order part.
    fn default_var(&self, m: &Lpdo, given: Option<&str>) -> Result<usize> {
        match given {
            Some(v) => self.var(v),
            None => (0..self.tower().nvars())
                .find(|&i| !m.coeff_of_d(i).is_zero())
                .ok_or(Error::NotFirstOrder),
        }
    }
}

fn residual_of(e: &Error) -> Option<String> {
    match e {
        Error::NoIlt { residual }
        | Error::ConditionViolated { residual }
        | Error::NotIntertwining { residual }
        | Error::DecompositionMismatch { residual }
        | Error::AlphaNotASolution { residual } => Some(residual.clone()),
        _ => None,
    }
}

fn lines(pairs: &[(&str, String)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k} = {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn yes(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn verify(
    ctx: &Ctx,
    x1: &str,
    x2: &str,
    h: &str,
    psi: Option<&str>,
    l: Option<&str>,
    l1: Option<&str>,
) -> Result<Outcome> {
    let tower = ctx.tower().clone();
    let (x1, x2, h) = (ctx.op(x1)?, ctx.op(x2)?, ctx.op(h)?);
    let psi = match psi {
        Some(p) => ctx.expr(p)?,
        None if ctx.ws.expr("psi").is_some() => ctx.ws.expr("psi").cloned().expect("checked"),
        None if h.is_zero() => RationalExpr::zero(),
        None => detect_psi(&h, &x2)?,
    };
    let psi_op = Lpdo::function(&tower, psi.clone());
    let pick = |given: Option<&str>, name: &str, computed: Lpdo| -> Result<Lpdo> {
        match given {
            Some(t) => ctx.op(t),
            None => Ok(ctx.ws.operator(name).cloned().unwrap_or(computed)),
        }
    };
    let l = pick(l, "L", x1.compose(&x2)?.checked_sub(&h)?)?;
    let l1 = pick(
        l1,
        "L1",
        x2.compose(&x1)?
            .checked_add(&psi_op.compose(&x1)?)?
            .checked_sub(&h)?,
    )?;
    let m1 = x2.checked_add(&psi_op)?;
    let cert = IltCertificate {
        x1,
        x2: x2.clone(),
        h: h.clone(),
        psi,
        l,
        l1,
        m: x2.clone(),
        m1,
    };
    let check = cert.check()?;
    let pass = check.all_hold();
    let residual = if pass {
        None
    } else {
        let cond = h.compose(&x2)?.checked_sub(&cert.m1.compose(&h)?)?;
        let inter = cert.m1.compose(&cert.l)?.checked_sub(&cert.l1.compose(&cert.m)?)?;
        Some(if cond.is_zero() { inter } else { cond }.to_string())
    };
    let mut text = cert.to_text().replace("\nverified: true", "");
    for (name, ok) in &check.identities {
        text.push_str(&format!("\n{}: {name}", yes(*ok)));
    }
    let mut result = cert.to_json();
    result["verified"] = json!(pass);
    result["identities"] = check
        .identities
        .iter()
        .map(|(n, ok)| json!({"identity": n, "holds": ok}))
        .collect();
    Ok(Outcome {
        pass,
        result,
        text,
        residual,
    })
}

fn dispatch(ctx: &Ctx, cmd: &Command, max_steps: usize) -> Result<Outcome> {
    let tower = ctx.tower().clone();
    Ok(match cmd {
        Command::Compose { ops } => {
            let mut acc = Lpdo::one(&tower);
            for t in ops {
                acc = acc.compose(&ctx.op(t)?)?;
            }
            Outcome::ok(json!(acc.to_string()), acc.to_string())
        }
        Command::Commutator { a, b } => {
            let c = ctx.op(a)?.commutator(&ctx.op(b)?)?;
            Outcome::ok(json!(c.to_string()), c.to_string())
        }
        Command::Divide { l, m, var } => {
            let (l, m) = (ctx.op(l)?, ctx.op(m)?);
            let v = ctx.default_var(&m, var.as_deref())?;
            let (q, r) = l.right_divide(&m, v)?;
            debug_assert_eq!(&(&q * &m) + &r, l);
            Outcome::ok(
                json!({"Q": q.to_string(), "R": r.to_string()}),
                lines(&[("Q", q.to_string()), ("R", r.to_string())]),
            )
        }
        Command::Symbol { l, factor } => {
            let l = ctx.op(l)?;
            let sym = l.principal_symbol()?;
            match factor {
                None => Outcome::ok(json!({"symbol": sym.to_string()}), sym.to_string()),
                Some(uv) => {
                    let f = factor_symbol_quadratic(&l, ctx.var(&uv[0])?, ctx.var(&uv[1])?)?;
                    Outcome::ok(
                        json!({"symbol": sym.to_string(), "first": f.first.to_string(), "second": f.second.to_string()}),
                        lines(&[
                            ("Sym", sym.to_string()),
                            ("first", f.first.to_string()),
                            ("second", f.second.to_string()),
                        ]),
                    )
                }
            }
        }
        Command::Apply { l, f } => {
            let r = ctx.op(l)?.apply(&ctx.expr(f)?);
            Outcome::ok(json!(ctx.show(&r)), ctx.show(&r))
        }
        Command::Chvar { l, fwd, inv } => {
            let r = ctx.op(l)?.change_vars(&ctx.exprs(fwd)?, &ctx.exprs(inv)?)?;
            Outcome::ok(json!(r.to_string()), r.to_string())
        }
        Command::Ilt(IltCommand::Generate {
            x1,
            h_tilde,
            theta1,
            theta2,
            rect_var,
            fwd,
            inv,
        }) => {
            let maps = match (fwd, inv) {
                (Some(f), Some(i)) => Some(CoordinateMaps {
                    fwd: ctx.exprs(f)?,
                    inv: ctx.exprs(i)?,
                }),
                _ => None,
            };
            let c = generate(
                &ctx.op(h_tilde)?,
                &ctx.expr(theta1)?,
                &ctx.expr(theta2)?,
                &ctx.op(x1)?,
                ctx.var(rect_var)?,
                maps.as_ref(),
            )?;
            Outcome::certificate(&c)
        }
        Command::Ilt(IltCommand::Verify {
            x1,
            x2,
            h,
            psi,
            l,
            l1,
        }) => verify(ctx, x1, x2, h, psi.as_deref(), l.as_deref(), l1.as_deref())?,
        Command::Laplace(LaplaceCommand::Invariants { coeffs }) => {
            let (a, b, c) = ctx.coeffs(coeffs)?;
            let d = laplace_invariants(&tower, &a, &b, &c)?;
            Outcome::ok(
                json!({"h": ctx.show(&d.h), "k": ctx.show(&d.k)}),
                lines(&[("h", ctx.show(&d.h)), ("k", ctx.show(&d.k))]),
            )
        }
        Command::Laplace(LaplaceCommand::Transform { coeffs, dir }) => {
            let (a, b, c) = ctx.coeffs(coeffs)?;
            Outcome::certificate(&laplace_transform(&tower, &a, &b, &c, (*dir).into())?)
        }
        Command::Laplace(LaplaceCommand::Cascade { coeffs, dir }) => {
            let (a, b, c) = ctx.coeffs(coeffs)?;
            let report = cascade(&tower, &a, &b, &c, (*dir).into(), max_steps)?;
            let mut text: Vec<String> = report
                .steps
                .iter()
                .map(|s| {
                    format!(
                        "step {}: a = {}, b = {}, c = {}, h = {}, k = {} [{}]",
                        s.step,
                        ctx.show(&s.data.a),
                        ctx.show(&s.data.b),
                        ctx.show(&s.data.c),
                        ctx.show(&s.data.h),
                        ctx.show(&s.data.k),
                        s.status.as_str()
                    )
                })
                .collect();
            if let CascadeOutcome::Factored { first, second } = &report.outcome {
                text.push(format!("factors: ({first})*({second})"));
            }
            Outcome::ok(report.to_json(&tower), text.join("\n"))
        }
        Command::Gauge { l, lambda, phi } => {
            Outcome::certificate(&gauge_as_ilt(&ctx.op(l)?, &ctx.expr(lambda)?, &ctx.expr(phi)?)?)
        }
        Command::Lodo(LodoCommand::Euclid { l, m }) => {
            let e = lodo_euclid(&ctx.op(l)?, &ctx.op(m)?)?;
            let pairs = [
                ("rgcd", e.gcd.to_string()),
                ("lclm", e.lclm.to_string()),
                ("l_bar", e.l_bar.to_string()),
                ("m_bar", e.m_bar.to_string()),
                ("s", e.s.to_string()),
                ("t", e.t.to_string()),
            ];
            let result: serde_json::Map<String, Value> =
                pairs.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            Outcome::ok(Value::Object(result), lines(&pairs))
        }
        Command::Lodo(LodoCommand::Transform { l, m }) => {
            Outcome::certificate(&lodo_transform_as_ilt(&ctx.op(l)?, &ctx.op(m)?)?)
        }
        Command::Darboux(DarbouxCommand::Schrodinger { v }) => {
            let s = schrodinger_darboux(&tower, &ctx.expr(v)?)?;
            let mut result = s.certificate.to_json();
            result["u"] = json!(ctx.show(&s.u));
            result["u_tilde"] = json!(ctx.show(&s.u_tilde));
            let text = format!(
                "{}\n{}",
                lines(&[("u", ctx.show(&s.u)), ("u_tilde", ctx.show(&s.u_tilde))]),
                s.certificate.to_text()
            );
            Outcome::ok(result, text)
        }
        Command::Darboux(DarbouxCommand::Hyperbolic { coeffs, seeds }) => {
            let (a, b, c) = ctx.coeffs(coeffs)?;
            Outcome::certificate(&darboux_hyperbolic(&tower, &a, &b, &c, &ctx.exprs(seeds)?)?)
        }
        Command::Darboux(DarbouxCommand::Parabolic { coeffs, seeds }) => {
            let (a, b, c) = ctx.coeffs(coeffs)?;
            Outcome::certificate(&darboux_parabolic(&tower, &a, &b, &c, &ctx.exprs(seeds)?)?)
        }
        Command::EulerDarboux { a, b, h, c } => Outcome::certificate(&euler_darboux(
            &ctx.op(a)?,
            &ctx.op(b)?,
            &ctx.expr(h)?,
            &ctx.expr(c)?,
        )?),
        Command::Petren { a, b, seed } => Outcome::certificate(&petren_transform(
            &tower,
            &ctx.exprs(a)?,
            &ctx.exprs(b)?,
            &ctx.expr(seed)?,
        )?),
        Command::Dini(DiniCommand::Decompose { h, x2 }) => {
            let d = dini_decompose(&ctx.op(h)?, &ctx.op(x2)?)?;
            Outcome::ok(
                json!({"kappa": ctx.show(&d.kappa), "rho": ctx.show(&d.rho)}),
                lines(&[("kappa", ctx.show(&d.kappa)), ("rho", ctx.show(&d.rho))]),
            )
        }
        Command::Dini(DiniCommand::ToIlt { x1, x2, h, alpha }) => {
            let (x1, x2, h) = (ctx.op(x1)?, ctx.op(x2)?, ctx.op(h)?);
            let d = dini_decompose(&h, &x2)?;
            Outcome::certificate(&dini_to_ilt(&x1, &x2, &h, &d, &ctx.expr(alpha)?)?)
        }
        Command::Intertwine(IntertwineCommand::Solve { l, m }) => {
            let s = solve_intertwining(&ctx.op(l)?, &ctx.op(m)?)?;
            let mut text = vec![format!("status: {:?}", s.status)];
            if let (Some(l1), Some(m1)) = (&s.l1, &s.m1) {
                text.push(format!("L1 = {l1}"));
                text.push(format!("M1 = {m1}"));
            }
            for (k, (dl, dm)) in s.kernel.iter().enumerate() {
                text.push(format!("kernel {k}: dL1 = {dl}, dM1 = {dm}"));
            }
            if let Some(d) = &s.diagnostic {
                text.push(format!("note: {d}"));
            }
            Outcome::ok(s.to_json(), text.join("\n"))
        }
        Command::Intertwine(IntertwineCommand::Certify { l, m, l1, m1 }) => {
            let (l, m, l1, m1) = (ctx.op(l)?, ctx.op(m)?, ctx.op(l1)?, ctx.op(m1)?);
            let r = certify_lclm(&l, &m, &l1, &m1)?;
            let residual = m1.compose(&l)?.checked_sub(&l1.compose(&m)?)?;
            let text = [
                ("M1*L = L1*M", r.product),
                ("ord L = ord L1, ord M = ord M1", r.orders),
                ("Sym L = Sym L1", r.symbols),
                ("M does not right-divide L", r.not_divisible),
            ]
            .iter()
            .map(|(n, ok)| format!("{}: {n}", yes(*ok)))
            .collect::<Vec<_>>()
            .join("\n");
            Outcome {
                pass: r.certified(),
                result: r.to_json(),
                text,
                residual: (!residual.is_zero()).then(|| residual.to_string()),
            }
        }
        Command::Intertwine(IntertwineCommand::Normalize { l, m, m1, l1, var }) => {
            let (l, m, m1, l1) = (ctx.op(l)?, ctx.op(m)?, ctx.op(m1)?, ctx.op(l1)?);
            let v = ctx.default_var(&m, var.as_deref())?;
            Outcome::certificate(&first_order_to_ilt(&l, &m, &m1, &l1, v)?)
        }
        Command::Intertwine(IntertwineCommand::Kernel { l, m, h, seeds }) => {
            let h = h.as_deref().map(|t| ctx.op(t)).transpose()?;
            let rows = kernel_check(&ctx.op(l)?, &ctx.op(m)?, h.as_ref(), &ctx.exprs(seeds)?);
            let pass = rows.iter().all(|r| r.l && r.m && r.h.unwrap_or(true));
            let text = rows
                .iter()
                .map(|r| {
                    let mut s = format!("{}: L {}, M {}", ctx.show(&r.seed), yes(r.l), yes(r.m));
                    if let Some(h) = r.h {
                        s.push_str(&format!(", H {}", yes(h)));
                    }
                    s
                })
                .collect::<Vec<_>>()
                .join("\n");
            let result = rows
                .iter()
                .map(|r| json!({"seed": ctx.show(&r.seed), "L": r.l, "M": r.m, "H": r.h}))
                .collect();
            Outcome {
                pass,
                result,
                text,
                residual: None,
            }
        }
    })
}

fn load(cli: &Cli) -> Result<Ctx> {
    let ws = match &cli.workspace {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Workspace::parse(&text, &cli.vars)?
        }
        None => Workspace::from_vars(&cli.vars)?,
    };
    let bindings = ws.bindings();
    Ok(Ctx { ws, bindings })
}

/// The parser, with options accepting values such as `-x` or `-Dx`.
fn command() -> clap::Command {
    fn hyphen_values(cmd: clap::Command) -> clap::Command {
        cmd.mut_args(|a| {
            if a.get_long().is_some() && a.get_action().takes_values() {
                a.allow_hyphen_values(true)
            } else {
                a
            }
        })
        .mut_subcommands(hyphen_values)
    }
    hyphen_values(Cli::command())
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code with the output text.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let want_json = args.iter().any(|a| a == "--json");
    let parsed = command()
        .try_get_matches_from(&args)
        .and_then(|m| Cli::from_arg_matches(&m));
    let cli = match parsed {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let msg = e.render().to_string();
            if want_json && code == 2 {
                let v = json!({"op": null, "status": "error", "result": msg.trim_end(), "residual": null});
                return (code, v.to_string());
            }
            return (code, msg.trim_end().to_string());
        }
    };
    let op = cli.command.name();
    let outcome = load(&cli).and_then(|ctx| dispatch(&ctx, &cli.command, cli.max_steps));
    let (code, status, result, text, residual) = match outcome {
        Ok(o) => {
            let (code, status) = if o.pass { (0, "ok") } else { (1, "fail") };
            (code, status, o.result, o.text, o.residual)
        }
        Err(e) => {
            let (code, status) = if e.is_input_error() { (2, "error") } else { (1, "fail") };
            let msg = format!("error: {e}");
            (code, status, json!(e.to_string()), msg, residual_of(&e))
        }
    };
    if cli.json {
        let v = json!({"op": op, "status": status, "result": result, "residual": residual});
        return (code, serde_json::to_string_pretty(&v).expect("serializable"));
    }
    let mut text = text;
    if let Some(r) = residual {
        text.push_str(&format!("\nresidual: {r}"));
    }
    (code, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> (i32, String) {
        run(std::iter::once("ilt").chain(args.iter().copied()))
    }

    #[test]
    fn compose_and_errors() {
        let (code, out) = cli(&["compose", "Dx + 2/x", "x^2*Dy + x*y*Dz + 1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "x^2*Dx*Dy + x*y*Dx*Dz + Dx + 4*x*Dy + 3*y*Dz + 2/x");
        let (code, out) = cli(&["compose", "Dx +", "Dy"]);
        assert_eq!(code, 2);
        assert!(out.contains("syntax error at 1:5"), "{out}");
        assert_eq!(cli(&["nonsense"]).0, 2);
    }

    #[test]
    fn zero_invariant_is_a_failure() {
        let (code, out) = cli(&["--json", "laplace", "transform", "--a", "x*y", "--dir", "Y"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["op"], "laplace transform");
    }
}
