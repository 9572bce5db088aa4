use std::fmt;

use crate::error::{Error, Result};

/// Index of a variable in a [`VarTable`]. Smaller indices rank higher in the
/// graded-lex term order.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub(crate) u16);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match STANDARD_NAMES.get(self.index()) {
            Some((name, _)) => write!(f, "{name}"),
            None => write!(f, "v{}", self.0),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Geometric,
    Parameter,
}

/// Coordinates of the Enriques model `w² = z·f(y, z)`.
pub const W_LOWER: Var = Var(0);
pub const Y_LOWER: Var = Var(1);
pub const Z_LOWER: Var = Var(2);
/// Coordinates of the K3 cover `W² = g(Y, Z)`.
pub const W_UPPER: Var = Var(3);
pub const Y_UPPER: Var = Var(4);
pub const Z_UPPER: Var = Var(5);

pub const PARAM_A: Var = Var(6);
pub const PARAM_B: Var = Var(7);
pub const PARAM_C: Var = Var(8);
pub const PARAM_D: Var = Var(9);
pub const PARAM_E: Var = Var(10);
pub const PARAM_F: Var = Var(11);
/// Torus coordinate of the diagonal rescaling (y, z) ↦ (αy, αz).
pub const ALPHA: Var = Var(12);
/// Torus coordinate of the homothety of the parameters.
pub const LAMBDA: Var = Var(13);

const STANDARD_NAMES: [(&str, Role); 14] = [
    ("w", Role::Geometric),
    ("y", Role::Geometric),
    ("z", Role::Geometric),
    ("W", Role::Geometric),
    ("Y", Role::Geometric),
    ("Z", Role::Geometric),
    ("A", Role::Parameter),
    ("B", Role::Parameter),
    ("C", Role::Parameter),
    ("D", Role::Parameter),
    ("E", Role::Parameter),
    ("F", Role::Parameter),
    ("alpha", Role::Parameter),
    ("lambda", Role::Parameter),
];

/// Ordered, role-tagged variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    entries: Vec<(String, Role)>,
}

impl VarTable {
    /// Table holding the geometric coordinates w, y, z, W, Y, Z and the
    /// parameters A..F, alpha, lambda, in that order.
    pub fn standard() -> Self {
        Self {
            entries: STANDARD_NAMES.iter().map(|(n, r)| (n.to_string(), *r)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        let name = match name {
            "α" => "alpha",
            "λ" => "lambda",
            other => other,
        };
        self.entries.iter().position(|(n, _)| n == name).map(|i| Var(i as u16))
    }

    /// Returns the variable called `name`, adding it with `role` if missing.
    pub fn intern(&mut self, name: &str, role: Role) -> Result<Var> {
        if let Some(v) = self.lookup(name) {
            if self.role(v) != role {
                return Err(Error::Schema(format!(
                    "variable `{name}` already declared as {:?}",
                    self.role(v)
                )));
            }
            return Ok(v);
        }
        if !is_identifier(name) || matches!(name, "i" | "zeta8" | "sqrt2") {
            return Err(Error::Schema(format!("`{name}` is not a valid variable name")));
        }
        if self.entries.len() >= u16::MAX as usize {
            return Err(Error::Schema("too many variables".into()));
        }
        self.entries.push((name.to_string(), role));
        Ok(Var((self.entries.len() - 1) as u16))
    }

    pub fn name(&self, v: Var) -> &str {
        &self.entries[v.index()].0
    }

    pub fn role(&self, v: Var) -> Role {
        self.entries[v.index()].1
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.entries.len()).map(|i| Var(i as u16))
    }
}

impl Default for VarTable {
    fn default() -> Self {
        Self::standard()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_')
}
