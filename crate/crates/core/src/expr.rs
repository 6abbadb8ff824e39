//! Affine integer expressions in named unknowns, used by the solvers to
//! return solution families (multiplicities like `12 + rho_d - a`) when a
//! scenario is under-determined.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `constant + sum(coeff * var)` over the named unknowns.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinExpr {
    pub constant: i64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub terms: BTreeMap<String, i64>,
}

impl LinExpr {
    pub fn constant(c: i64) -> Self {
        LinExpr {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(name.to_string(), 1);
        LinExpr { constant: 0, terms }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<i64> {
        self.is_constant().then_some(self.constant)
    }

    /// Evaluates with the given assignment; every variable must be bound.
    pub fn eval(&self, assignment: &BTreeMap<String, i64>) -> Result<i64> {
        let mut acc = self.constant;
        for (name, coeff) in &self.terms {
            let v = assignment
                .get(name)
                .ok_or_else(|| Error::invalid(format!("unbound unknown {name:?}")))?;
            acc += coeff * v;
        }
        Ok(acc)
    }

    /// Substitutes any bound variables, keeping the rest symbolic.
    pub fn substitute(&self, assignment: &BTreeMap<String, i64>) -> LinExpr {
        let mut out = LinExpr::constant(self.constant);
        for (name, &coeff) in &self.terms {
            match assignment.get(name) {
                Some(v) => out.constant += coeff * v,
                None => {
                    *out.terms.entry(name.clone()).or_insert(0) += coeff;
                }
            }
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| *c != 0);
    }
}

impl From<i64> for LinExpr {
    fn from(c: i64) -> Self {
        LinExpr::constant(c)
    }
}

impl Add for &LinExpr {
    type Output = LinExpr;
    fn add(self, rhs: &LinExpr) -> LinExpr {
        let mut out = self.clone();
        out.constant += rhs.constant;
        for (name, coeff) in &rhs.terms {
            *out.terms.entry(name.clone()).or_insert(0) += coeff;
        }
        out.prune();
        out
    }
}

impl Sub for &LinExpr {
    type Output = LinExpr;
    fn sub(self, rhs: &LinExpr) -> LinExpr {
        self + &(-rhs)
    }
}

impl Neg for &LinExpr {
    type Output = LinExpr;
    fn neg(self) -> LinExpr {
        let mut out = self.clone();
        out.constant = -out.constant;
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }
}

impl Mul<i64> for &LinExpr {
    type Output = LinExpr;
    fn mul(self, k: i64) -> LinExpr {
        let mut out = self.clone();
        out.constant *= k;
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out.prune();
        out
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.constant != 0 || self.terms.is_empty() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (name, &coeff) in &self.terms {
            if coeff == 0 {
                continue;
            }
            let sign = if coeff < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = coeff.abs();
            if first {
                if mag == 1 {
                    write!(f, "{sign}{name}")?;
                } else {
                    write!(f, "{sign}{mag}*{name}")?;
                }
            } else if mag == 1 {
                write!(f, " {sign} {name}")?;
            } else {
                write!(f, " {sign} {mag}*{name}")?;
            }
            first = false;
        }
        Ok(())
    }
}
