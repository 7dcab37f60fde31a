//! Defining relations of the algebra and the commutation identities of the
//! basic representation.

use serde::{Deserialize, Serialize};

use super::basic::{mult_by, y_explicit, BasicRep};
use super::ops::DiffRefOp;
use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::params::ParamSet;
use crate::scalar::Field;

/// Outcome of one operator identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: String,
    pub params: String,
    pub pass: bool,
    /// Number of shifts at which the residual operator is nonzero.
    pub residual_terms: usize,
}

/// Turns a residual operator (which should vanish) into a report.
pub fn report_from_residual<S: Field>(
    relation: &str,
    p: &ParamSet<S>,
    residual: &DiffRefOp<S>,
    tol: f64,
) -> RelationReport {
    let nonzero = if S::EXACT {
        residual.num_terms()
    } else {
        residual
            .terms()
            .filter(|(_, r)| r.num().max_abs() > tol)
            .count()
    };
    RelationReport {
        relation: relation.to_string(),
        params: p.to_string(),
        pass: nonzero == 0,
        residual_terms: nonzero,
    }
}

fn prod<S: Field>(a: &DiffRefOp<S>, b: &DiffRefOp<S>) -> Result<DiffRefOp<S>> {
    a.compose(b)
}

fn plus<S: Field>(a: &DiffRefOp<S>, c: &S) -> Result<DiffRefOp<S>> {
    a.add_scalar(c)
}

/// Residual operators of the defining relations for operators
/// `[T1, T1^{-1}, T0, T0^{-1}, Z, Z^{-1}]` with the scalars of `p`:
/// - `(T1 + ab)(T1 + 1)`, `(T0 + q^{-1}cd)(T0 + 1)`,
/// - `(T1 Z + a)(T1 Z + b)`, `(q T0 Z^{-1} + c)(q T0 Z^{-1} + d)`,
/// - `(Z^{-1} T1^{-1} + a^{-1})(Z^{-1} T1^{-1} + b^{-1})`,
/// - `(T0^{-1} Z + q c^{-1})(T0^{-1} Z + q d^{-1})`,
/// - `g g^{-1} - 1` and `g^{-1} g - 1` for each generator.
pub fn defining_relations<S: Field>(
    ops: &[DiffRefOp<S>; 6],
    p: &ParamSet<S>,
) -> Result<Vec<(String, DiffRefOp<S>)>> {
    let [t1, t1i, t0, t0i, z, zi] = ops;
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let one = q.one_like();
    let mut out = Vec::new();

    out.push((
        "(T1 + ab)(T1 + 1)".to_string(),
        prod(&plus(t1, &(a.clone() * b))?, &plus(t1, &one)?)?,
    ));
    out.push((
        "(T0 + q^-1 cd)(T0 + 1)".to_string(),
        prod(&plus(t0, &(c.clone() * d / q))?, &plus(t0, &one)?)?,
    ));
    let t1z = prod(t1, z)?;
    out.push((
        "(T1 Z + a)(T1 Z + b)".to_string(),
        prod(&plus(&t1z, a)?, &plus(&t1z, b)?)?,
    ));
    let qt0zi = prod(t0, zi)?.scale(q);
    out.push((
        "(q T0 Z^-1 + c)(q T0 Z^-1 + d)".to_string(),
        prod(&plus(&qt0zi, c)?, &plus(&qt0zi, d)?)?,
    ));
    let zit1i = prod(zi, t1i)?;
    out.push((
        "(Z^-1 T1^-1 + a^-1)(Z^-1 T1^-1 + b^-1)".to_string(),
        prod(&plus(&zit1i, &a.inv()?)?, &plus(&zit1i, &b.inv()?)?)?,
    ));
    let t0iz = prod(t0i, z)?;
    out.push((
        "(T0^-1 Z + q c^-1)(T0^-1 Z + q d^-1)".to_string(),
        prod(&plus(&t0iz, &(q.clone() / c))?, &plus(&t0iz, &(q.clone() / d))?)?,
    ));
    let id = DiffRefOp::identity(q);
    for (name, g, gi) in [("T1", t1, t1i), ("T0", t0, t0i), ("Z", z, zi)] {
        out.push((format!("{name} {name}^-1 = 1"), prod(g, gi)?.sub(&id)?));
        out.push((format!("{name}^-1 {name} = 1"), prod(gi, g)?.sub(&id)?));
    }
    Ok(out)
}

fn commutator<S: Field>(a: &DiffRefOp<S>, b: &DiffRefOp<S>) -> Result<DiffRefOp<S>> {
    prod(a, b)?.sub(&prod(b, a)?)
}

/// Checks the defining relations in the basic representation together with
/// the commutation identities `[T1, X] = [T1, D] = [T1, f(Z)] = 0` (symmetric
/// `f`), `[T0, D] = 0`, `[T0, Z + q Z^{-1}] = 0`, the idempotent `e^2 = e`,
/// and the closed form of `Y = T1 T0`.
pub fn verify_daha_relations<S: Field>(p: &ParamSet<S>, tol: f64) -> Result<Vec<RelationReport>> {
    let rep = BasicRep::new(p)?;
    let ops = [
        rep.t1.clone(),
        rep.t1_inv.clone(),
        rep.t0.clone(),
        rep.t0_inv.clone(),
        rep.z.clone(),
        rep.z_inv.clone(),
    ];
    let mut out: Vec<RelationReport> = defining_relations(&ops, p)?
        .into_iter()
        .map(|(n, r)| report_from_residual(&n, p, &r, tol))
        .collect();

    let one = p.q.one_like();
    let x = rep.x()?;
    let d = rep.d()?;
    out.push(report_from_residual("[T1, X] = 0", p, &commutator(&rep.t1, &x)?, tol));
    out.push(report_from_residual("[T1, D] = 0", p, &commutator(&rep.t1, &d)?, tol));
    let f = LaurentPoly::from_terms([
        (2, one.clone()),
        (-2, one.clone()),
        (1, one.int_like(3)),
        (-1, one.int_like(3)),
        (0, one.int_like(-5)),
    ]);
    out.push(report_from_residual(
        "[T1, f(Z)] = 0 for symmetric f",
        p,
        &commutator(&rep.t1, &mult_by(p, &f))?,
        tol,
    ));
    out.push(report_from_residual("[T0, D] = 0", p, &commutator(&rep.t0, &d)?, tol));
    let zq = rep.z.add(&rep.z_inv.scale(&p.q))?;
    out.push(report_from_residual("[T0, Z + q Z^-1] = 0", p, &commutator(&rep.t0, &zq)?, tol));
    let e = rep.idempotent()?;
    out.push(report_from_residual("e^2 = e", p, &prod(&e, &e)?.sub(&e)?, tol));
    out.push(report_from_residual(
        "T1 T0 equals the four-term closed form of Y",
        p,
        &rep.y()?.sub(&y_explicit(p)?)?,
        tol,
    ));
    Ok(out)
}
