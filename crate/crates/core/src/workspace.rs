//! Workspace files: a tower declaration plus named expressions and
//! operators.
//!
//! ```text
//! # comment
//! [vars]
//! x, y, z
//! [generators]
//! t.x = t        # t_x = t, other partials zero
//! [exprs]
//! theta1 = x
//! [operators]
//! X1 = x^2*Dy + x*y*Dz + 1
//! ```
//!
//! Entries may refer to entries defined above them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldTower, RationalExpr};
use crate::operator::Lpdo;
use crate::parse::{parse_expr_with, parse_operator_with, Bindings};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Vars,
    Generators,
    Exprs,
    Operators,
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub tower: Arc<FieldTower>,
    pub exprs: Vec<(String, RationalExpr)>,
    pub operators: Vec<(String, Lpdo)>,
}

/// A line with its number and the column where the text starts.
struct Line<'a> {
    no: usize,
    col: usize,
    text: &'a str,
}

fn ws_err(no: usize, msg: impl std::fmt::Display) -> Error {
    Error::Workspace(format!("line {no}: {msg}"))
}

/// Shifts positions reported by the expression parser to file positions.
fn relocate(e: Error, line: &Line) -> Error {
    let shift = |l: usize, c: usize| {
        if l == 1 {
            (line.no, c + line.col - 1)
        } else {
            (line.no + l - 1, c)
        }
    };
    match e {
        Error::Syntax {
            line: l,
            column: c,
            message,
        } => {
            let (line, column) = shift(l, c);
            Error::Syntax {
                line,
                column,
                message,
            }
        }
        Error::UnknownSymbol {
            name,
            line: l,
            column: c,
        } => {
            let (line, column) = shift(l, c);
            Error::UnknownSymbol { name, line, column }
        }
        Error::NegativeExponent { line: l, column: c } => {
            let (line, column) = shift(l, c);
            Error::NegativeExponent { line, column }
        }
        other => ws_err(line.no, other),
    }
}

/// Splits `name = text`, returning the value with its column.
fn split_binding<'a>(line: &Line<'a>) -> Result<(&'a str, Line<'a>)> {
    let (lhs, rhs) = line
        .text
        .split_once('=')
        .ok_or_else(|| ws_err(line.no, "expected `name = expression`"))?;
    let lead = rhs.len() - rhs.trim_start().len();
    Ok((
        lhs.trim(),
        Line {
            no: line.no,
            col: line.col + lhs.len() + 1 + lead,
            text: rhs.trim(),
        },
    ))
}

impl Workspace {
    /// Parses a workspace; `default_vars` is used when there is no `[vars]`
    /// section.
    pub fn parse(text: &str, default_vars: &[String]) -> Result<Workspace> {
        let mut sections: Vec<(Section, Vec<Line>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let no = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(name) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let s = match name.trim() {
                    "vars" => Section::Vars,
                    "generators" => Section::Generators,
                    "exprs" => Section::Exprs,
                    "operators" => Section::Operators,
                    other => return Err(ws_err(no, format!("unknown section `[{other}]`"))),
                };
                if sections.iter().any(|(t, _)| *t == s) {
                    return Err(ws_err(no, format!("section `[{}]` repeated", name.trim())));
                }
                sections.push((s, Vec::new()));
                continue;
            }
            let col = body.len() - body.trim_start().len() + 1;
            match sections.last_mut() {
                Some((_, lines)) => lines.push(Line {
                    no,
                    col,
                    text: trimmed,
                }),
                None => return Err(ws_err(no, "entry outside of a section")),
            }
        }
        let section = |s: Section| sections.iter().find(|(t, _)| *t == s).map(|(_, l)| l.as_slice());

        let vars: Vec<String> = match section(Section::Vars) {
            Some(lines) => lines
                .iter()
                .flat_map(|l| l.text.split(|c: char| c == ',' || c.is_whitespace()))
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect(),
            None => default_vars.to_vec(),
        };
        let mut tower = FieldTower::new(vars)?;

        if let Some(lines) = section(Section::Generators) {
            // name -> [(var, value line)], in order of first appearance
            let mut gens: Vec<(&str, Vec<(&str, Line)>)> = Vec::new();
            for line in lines {
                let (lhs, rhs) = if line.text.contains('=') {
                    split_binding(line)?
                } else {
                    (line.text, Line { no: line.no, col: line.col, text: "0" })
                };
                let (name, var) = match lhs.split_once('.') {
                    Some((g, v)) => (g.trim(), Some(v.trim())),
                    None if rhs.text == "0" && !line.text.contains('=') => (lhs, None),
                    None => return Err(ws_err(line.no, "expected `generator.var = expression`")),
                };
                let pos = match gens.iter().position(|(g, _)| *g == name) {
                    Some(p) => p,
                    None => {
                        gens.push((name, Vec::new()));
                        gens.len() - 1
                    }
                };
                if let Some(var) = var {
                    if gens[pos].1.iter().any(|(v, _)| *v == var) {
                        return Err(ws_err(line.no, format!("partial {name}.{var} given twice")));
                    }
                    gens[pos].1.push((var, rhs));
                }
            }
            for (name, partials) in gens {
                // The partials may mention the generator itself, so they are
                // read in a tower where it is already present.
                let provisional = Arc::new(tower.declare_generator(name, &[])?);
                let mut values = Vec::new();
                for (var, line) in &partials {
                    let v = parse_expr_with(line.text, &provisional, &Bindings::new())
                        .map_err(|e| relocate(e, line))?;
                    values.push((*var, v));
                }
                tower = tower
                    .declare_generator(name, &values)
                    .map_err(|e| ws_err(partials.first().map_or(0, |(_, l)| l.no), e))?;
            }
        }

        let tower = Arc::new(tower);
        let mut bindings = Bindings::new();
        let mut ws = Workspace {
            tower: tower.clone(),
            exprs: Vec::new(),
            operators: Vec::new(),
        };
        for (s, lines) in &sections {
            if !matches!(s, Section::Exprs | Section::Operators) {
                continue;
            }
            for line in lines {
                let (name, value) = split_binding(line)?;
                tower
                    .symbol_index(name)
                    .is_none()
                    .then_some(())
                    .filter(|_| !bindings.contains_key(name))
                    .ok_or_else(|| ws_err(line.no, format!("name `{name}` is already used")))?;
                FieldTower::new([name]).map_err(|e| ws_err(line.no, e))?;
                if name.strip_prefix('D').is_some_and(|v| tower.var_index(v).is_ok()) {
                    return Err(ws_err(line.no, format!("`{name}` is a derivation")));
                }
                if *s == Section::Exprs {
                    let f = parse_expr_with(value.text, &tower, &bindings).map_err(|e| relocate(e, &value))?;
                    bindings.insert(name.to_string(), Lpdo::function(&tower, f.clone()));
                    ws.exprs.push((name.to_string(), f));
                } else {
                    let op = parse_operator_with(value.text, &tower, &bindings).map_err(|e| relocate(e, &value))?;
                    bindings.insert(name.to_string(), op.clone());
                    ws.operators.push((name.to_string(), op));
                }
            }
        }
        Ok(ws)
    }

    pub fn from_vars(vars: &[String]) -> Result<Workspace> {
        Ok(Workspace {
            tower: Arc::new(FieldTower::new(vars.iter().cloned())?),
            exprs: Vec::new(),
            operators: Vec::new(),
        })
    }

    pub fn bindings(&self) -> Bindings {
        self.exprs
            .iter()
            .map(|(n, f)| (n.clone(), Lpdo::function(&self.tower, f.clone())))
            .chain(self.operators.iter().map(|(n, o)| (n.clone(), o.clone())))
            .collect()
    }

    pub fn operator(&self, name: &str) -> Option<&Lpdo> {
        self.operators.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    pub fn expr(&self, name: &str) -> Option<&RationalExpr> {
        self.exprs.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    /// Canonical text of the whole workspace; parsing it gives back an
    /// equal workspace.
    pub fn to_text(&self) -> String {
        let t = &self.tower;
        let mut out = format!("[vars]\n{}\n", t.vars().join(", "));
        if !t.generators().is_empty() {
            out.push_str("[generators]\n");
            for g in t.generators() {
                let mut any = false;
                for (v, d) in t.vars().iter().zip(g.partials()) {
                    if !d.is_zero() {
                        out.push_str(&format!("{}.{} = {}\n", g.name(), v, t.show(d)));
                        any = true;
                    }
                }
                if !any {
                    out.push_str(&format!("{}\n", g.name()));
                }
            }
        }
        if !self.exprs.is_empty() {
            out.push_str("[exprs]\n");
            for (n, f) in &self.exprs {
                out.push_str(&format!("{n} = {}\n", t.show(f)));
            }
        }
        if !self.operators.is_empty() {
            out.push_str("[operators]\n");
            for (n, o) in &self.operators {
                out.push_str(&format!("{n} = {o}\n"));
            }
        }
        out
    }
}
