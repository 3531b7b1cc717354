//! The differential coefficient field.
//!
//! Coefficients live in `Q(x_1, ..., x_n, t_1, ..., t_m)`: rational functions
//! in the independent variables and in user-declared generators `t_k`, each
//! carrying a table of partial derivatives. The caller is responsible for the
//! generators being algebraically independent over the variables; under that
//! assumption the canonical form of [`RationalExpr`] decides equality.

mod rational;

use std::fmt;

pub use rational::RationalExpr;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// A transcendental generator together with its partial derivatives, one per
/// variable, expressed over the variables, earlier generators and itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    name: String,
    partials: Vec<RationalExpr>,
}

impl Generator {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn partials(&self) -> &[RationalExpr] {
        &self.partials
    }
}

/// Independent variables plus declared generators.
///
/// Symbol indices run over the variables first and the generators after them,
/// in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    vars: Vec<String>,
    generators: Vec<Generator>,
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FieldTower {
    pub fn new<I, S>(vars: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut tower = FieldTower {
            vars: Vec::new(),
            generators: Vec::new(),
        };
        for v in vars {
            let v = v.into();
            tower.check_fresh(&v)?;
            tower.vars.push(v);
        }
        // A variable named like a derivation atom of another one would make
        // operator text ambiguous.
        for v in &tower.vars {
            if let Some(rest) = v.strip_prefix('D') {
                if tower.vars.iter().any(|w| w == rest) {
                    return Err(Error::NameCollision(v.clone()));
                }
            }
        }
        Ok(tower)
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        if !valid_identifier(name) {
            return Err(Error::InvalidName(name.to_string()));
        }
        if self.symbol_index(name).is_some() {
            return Err(Error::NameCollision(name.to_string()));
        }
        if let Some(rest) = name.strip_prefix('D') {
            if self.vars.iter().any(|v| v == rest) {
                return Err(Error::NameCollision(name.to_string()));
            }
        }
        if self.vars.iter().any(|v| format!("D{name}") == *v) {
            return Err(Error::NameCollision(name.to_string()));
        }
        Ok(())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn nsymbols(&self) -> usize {
        self.vars.len() + self.generators.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name).or_else(|| {
            self.generators
                .iter()
                .position(|g| g.name == name)
                .map(|k| k + self.vars.len())
        })
    }

    pub fn symbol_name(&self, i: usize) -> &str {
        if i < self.vars.len() {
            &self.vars[i]
        } else {
            &self.generators[i - self.vars.len()].name
        }
    }

    /// The variable or generator called `name`, as a field element.
    pub fn symbol(&self, name: &str) -> Result<RationalExpr> {
        self.symbol_index(name)
            .map(RationalExpr::symbol)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Extends the tower by a generator `name` whose partial derivatives are
    /// given per variable name; variables not listed get derivative zero.
    ///
    /// The partials may mention the new generator itself. Mixed partials are
    /// checked for every pair of variables.
    pub fn declare_generator(
        &self,
        name: &str,
        partials: &[(&str, RationalExpr)],
    ) -> Result<FieldTower> {
        self.check_fresh(name)?;
        let own_index = self.nsymbols();
        let mut table = vec![RationalExpr::zero(); self.nvars()];
        for (var, d) in partials {
            let i = self.var_index(var)?;
            if d.symbols().last().is_some_and(|&s| s > own_index) {
                return Err(Error::ForwardReference(name.to_string()));
            }
            table[i] = d.clone();
        }
        let mut tower = self.clone();
        tower.generators.push(Generator {
            name: name.to_string(),
            partials: table,
        });
        let g = tower.generators.last().expect("just pushed");
        for i in 0..tower.nvars() {
            for j in (i + 1)..tower.nvars() {
                let dij = tower.derive(&g.partials[j], i);
                let dji = tower.derive(&g.partials[i], j);
                if dij != dji {
                    return Err(Error::IntegrabilityViolation {
                        generator: name.to_string(),
                        first: tower.vars[i].clone(),
                        second: tower.vars[j].clone(),
                    });
                }
            }
        }
        Ok(tower)
    }

    /// Total derivative with respect to variable `var` (an index below
    /// [`FieldTower::nvars`]). Generators are differentiated through their
    /// declared partials.
    ///
    /// Panics if `var` is not a variable index of this tower.
    pub fn derive(&self, f: &RationalExpr, var: usize) -> RationalExpr {
        assert!(var < self.nvars(), "variable index out of range");
        if f.is_constant() {
            return RationalExpr::zero();
        }
        let dn = self.derive_poly(f.numer(), var);
        if f.denom().is_constant() {
            let den = RationalExpr::from_poly(f.denom().clone());
            return dn.checked_div(&den).expect("nonzero denominator");
        }
        let dd = self.derive_poly(f.denom(), var);
        let n = RationalExpr::from_poly(f.numer().clone());
        let d = RationalExpr::from_poly(f.denom().clone());
        let top = &(&dn * &d) - &(&n * &dd);
        top.checked_div(&(&d * &d)).expect("nonzero denominator")
    }

    /// Name-based variant of [`FieldTower::derive`].
    pub fn derive_by_name(&self, f: &RationalExpr, var: &str) -> Result<RationalExpr> {
        Ok(self.derive(f, self.var_index(var)?))
    }

    fn derive_poly(&self, p: &Poly, var: usize) -> RationalExpr {
        let mut out = RationalExpr::from_poly(p.partial(var));
        for (k, g) in self.generators.iter().enumerate() {
            let s = self.nvars() + k;
            if g.partials[var].is_zero() || !p.contains_symbol(s) {
                continue;
            }
            let dp = RationalExpr::from_poly(p.partial(s));
            out = &out + &(&dp * &g.partials[var]);
        }
        out
    }

    /// Iterated derivative `D^alpha f` for an exponent vector over variables.
    pub fn derive_multi(&self, f: &RationalExpr, exps: &[u32]) -> RationalExpr {
        let mut out = f.clone();
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                if out.is_zero() {
                    return out;
                }
                out = self.derive(&out, i);
            }
        }
        out
    }

    /// Canonical text of a field element using this tower's names.
    pub fn show(&self, f: &RationalExpr) -> String {
        crate::format::expr_to_string(self, f)
    }

    /// Helper for `impl Display` contexts.
    pub fn display<'a>(&'a self, f: &'a RationalExpr) -> impl fmt::Display + 'a {
        struct Shown<'a>(&'a FieldTower, &'a RationalExpr);
        impl fmt::Display for Shown<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.show(self.1))
            }
        }
        Shown(self, f)
    }
}
