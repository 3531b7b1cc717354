//! Canonical text and JSON forms.
//!
//! The text form is accepted back by the parser, and printing is a function
//! of the canonical representation only, so `parse(format(a)) == a` and
//! `format(parse(s)) == s` for canonical `s`.

use num_traits::{One, Signed};
use serde_json::{json, Map, Value};

use crate::field::{FieldTower, RationalExpr};
use crate::operator::{Lpdo, MultiIndex, PrincipalSymbol};
use crate::poly::{Monomial, Poly};

fn monomial_to_string(tower: &FieldTower, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(tower.symbol_name(i).to_string()),
            _ => parts.push(format!("{}^{}", tower.symbol_name(i), e)),
        }
    }
    parts.join("*")
}

fn poly_to_string(tower: &FieldTower, p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mono = monomial_to_string(tower, m);
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

fn is_single_factor(p: &Poly) -> bool {
    match p.terms() {
        [(m, c)] => {
            if m.is_one() {
                true
            } else {
                c.is_one() && m.symbols().count() == 1
            }
        }
        _ => false,
    }
}

/// Canonical text of a field element, e.g. `-3/x` or `(x + 1)/(2*y)`.
pub fn expr_to_string(tower: &FieldTower, f: &RationalExpr) -> String {
    let num = poly_to_string(tower, f.numer());
    if f.denom().is_one() {
        return num;
    }
    let num = if f.numer().len() > 1 {
        format!("({num})")
    } else {
        num
    };
    let den = poly_to_string(tower, f.denom());
    if is_single_factor(f.denom()) {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}

fn index_to_string(tower: &FieldTower, idx: &MultiIndex) -> String {
    let mut parts = Vec::new();
    for (i, &e) in idx.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("D{}", tower.symbol_name(i))),
            _ => parts.push(format!("D{}^{}", tower.symbol_name(i), e)),
        }
    }
    parts.join("*")
}

/// Coefficient text for a term with at least one derivation, without sign.
fn coeff_prefix(tower: &FieldTower, c: &RationalExpr) -> String {
    if c.is_one() {
        return String::new();
    }
    let s = expr_to_string(tower, c);
    if c.denom().is_one() && c.numer().len() > 1 {
        format!("({s})*")
    } else {
        format!("{s}*")
    }
}

fn term_body(tower: &FieldTower, idx: &MultiIndex, c: &RationalExpr, signed: bool) -> String {
    let multi = c.numer().len() > 1;
    if idx.is_zero() {
        let s = expr_to_string(tower, c);
        if signed && multi {
            format!("({s})")
        } else {
            s
        }
    } else {
        format!("{}{}", coeff_prefix(tower, c), index_to_string(tower, idx))
    }
}

/// Canonical text of an operator: terms in descending graded-lex order of
/// their derivative index, coefficients left of derivations.
pub fn operator_to_string(op: &Lpdo) -> String {
    let tower = op.tower();
    if op.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (idx, c)) in op.terms_desc().enumerate() {
        let neg = c.is_negative();
        let body = if neg {
            term_body(tower, idx, &-c, true)
        } else {
            term_body(tower, idx, c, false)
        };
        match (k, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

/// JSON form: a list of `{"index": {var: exp}, "coeff": text}` in canonical
/// term order.
pub fn operator_to_json(op: &Lpdo) -> Value {
    let tower = op.tower();
    Value::Array(
        op.terms_desc()
            .map(|(idx, c)| {
                let mut index = Map::new();
                for (i, &e) in idx.exponents().iter().enumerate() {
                    if e > 0 {
                        index.insert(tower.symbol_name(i).to_string(), json!(e));
                    }
                }
                json!({ "index": index, "coeff": expr_to_string(tower, c) })
            })
            .collect(),
    )
}

/// Text of a principal symbol with `xi_<var>` as the formal variables.
pub fn symbol_to_string(sym: &PrincipalSymbol) -> String {
    let tower = sym.tower();
    if sym.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (idx, c)) in sym.terms_desc().enumerate() {
        let neg = c.is_negative();
        let c = if neg { -c } else { c.clone() };
        match (k, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        let mut parts = Vec::new();
        for (i, &e) in idx.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("xi_{}", tower.symbol_name(i))),
                _ => parts.push(format!("xi_{}^{}", tower.symbol_name(i), e)),
            }
        }
        let xi = parts.join("*");
        if xi.is_empty() {
            out.push_str(&expr_to_string(tower, &c));
        } else {
            out.push_str(&format!("{}{}", coeff_prefix(tower, &c), xi));
        }
    }
    out
}
