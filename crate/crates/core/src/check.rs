//! Outcome of a single identity check and helpers to build one.

use serde::{Deserialize, Serialize};

use crate::daha::RelationReport;
use crate::laurent::LaurentPoly;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// The identity being checked, as a formula.
    pub anchor: String,
    pub pass: bool,
    /// Exact checks: largest coefficient of the difference (0 when equal).
    /// Numeric checks: relative deviation.
    pub residual: f64,
}

impl Check {
    pub fn new(id: &str, anchor: &str, pass: bool, residual: f64) -> Check {
        Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            pass,
            residual,
        }
    }

    pub fn failed(id: &str, anchor: &str, why: &str) -> Check {
        Check::new(id, &format!("{anchor} [error: {why}]"), false, f64::INFINITY)
    }

    pub fn from_relation(prefix: &str, r: &RelationReport) -> Check {
        let slug: String = r
            .relation
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '-' })
            .collect::<String>()
            .split('-')
            .filter(|s| !s.is_empty())
            .collect::<Vec<_>>()
            .join("-");
        Check::new(&format!("{prefix}/{slug}"), &r.relation, r.pass, r.residual_terms as f64)
    }
}

/// Residual of `lhs = rhs` for Laurent polynomials.
pub fn poly_residual<S: Field>(lhs: &LaurentPoly<S>, rhs: &LaurentPoly<S>) -> f64 {
    let d = lhs.sub(rhs).max_abs();
    if S::EXACT {
        if lhs == rhs {
            0.0
        } else {
            d.max(f64::MIN_POSITIVE)
        }
    } else {
        let s = lhs.max_abs().max(rhs.max_abs());
        if s == 0.0 {
            d
        } else {
            d / s
        }
    }
}

/// Residual of `lhs = rhs` for scalars.
pub fn scalar_residual<S: Field>(lhs: &S, rhs: &S) -> f64 {
    if S::EXACT {
        if lhs == rhs {
            0.0
        } else {
            (lhs.clone() - rhs).abs_f64().max(f64::MIN_POSITIVE)
        }
    } else {
        lhs.rel_dist(rhs)
    }
}

/// Accumulates the worst residual over a family of instances of one identity.
#[derive(Clone, Debug)]
pub struct Acc {
    id: String,
    anchor: String,
    worst: f64,
    error: Option<String>,
    tol: f64,
}

impl Acc {
    /// `tol = 0` demands exact equality.
    pub fn new(id: &str, anchor: &str, tol: f64) -> Acc {
        Acc {
            id: id.to_string(),
            anchor: anchor.to_string(),
            worst: 0.0,
            error: None,
            tol,
        }
    }

    pub fn residual(&mut self, r: f64) {
        if r.is_nan() {
            self.worst = f64::INFINITY;
        } else {
            self.worst = self.worst.max(r);
        }
    }

    pub fn poly<S: Field>(&mut self, lhs: &LaurentPoly<S>, rhs: &LaurentPoly<S>) {
        self.residual(poly_residual(lhs, rhs));
    }

    pub fn scalar<S: Field>(&mut self, lhs: &S, rhs: &S) {
        self.residual(scalar_residual(lhs, rhs));
    }

    /// Records an instance given as a fallible computation.
    pub fn run(&mut self, f: impl FnOnce(&mut Acc) -> crate::Result<()>) {
        if let Err(e) = f(self) {
            if self.error.is_none() {
                self.error = Some(e.to_string());
            }
        }
    }

    pub fn finish(self) -> Check {
        match self.error {
            Some(e) => Check::failed(&self.id, &self.anchor, &e),
            None => Check::new(&self.id, &self.anchor, self.worst <= self.tol, self.worst),
        }
    }
}
