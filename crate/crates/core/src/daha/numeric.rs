//! Pointwise action of the basic operators on functions given by evaluation.

use super::basic::{aw_operator, y_explicit, BasicRep};
use super::ops::DiffRefOp;
use crate::error::{Error, Result};
use crate::params::ParamSet;
use crate::scalar::{Cx, Field};

/// A function sampled pointwise.
pub type FuncSample<'a> = &'a dyn Fn(&Cx) -> Result<Cx>;

/// Relative distance below which `z` counts as a singular point.
const SINGULAR_TOL: f64 = 1e-20;

fn check_point(z: &Cx, p: &ParamSet<Cx>) -> Result<()> {
    if z.abs_f64() == 0.0 {
        return Err(Error::SingularPoint(z.to_string()));
    }
    let z2 = z.clone() * z;
    let one = z.one_like();
    let qi = p.q.inv()?;
    for s in [one, p.q.clone(), qi] {
        if z2.rel_dist(&s) < SINGULAR_TOL {
            return Err(Error::SingularPoint(z.to_string()));
        }
    }
    Ok(())
}

fn apply(op: &DiffRefOp<Cx>, f: FuncSample<'_>, z: &Cx, p: &ParamSet<Cx>) -> Result<Cx> {
    check_point(z, p)?;
    op.apply_fn(f, z)
}

pub fn apply_t1_numeric(f: FuncSample<'_>, z: &Cx, p: &ParamSet<Cx>) -> Result<Cx> {
    apply(&super::basic::t1(p)?, f, z, p)
}

pub fn apply_t0_numeric(f: FuncSample<'_>, z: &Cx, p: &ParamSet<Cx>) -> Result<Cx> {
    apply(&super::basic::t0(p)?, f, z, p)
}

/// `Y f` through the four-term closed form.
pub fn apply_y_numeric(f: FuncSample<'_>, z: &Cx, p: &ParamSet<Cx>) -> Result<Cx> {
    apply(&y_explicit(p)?, f, z, p)
}

/// `D f = Y f + q^{-1} abcd Y^{-1} f`.
pub fn apply_d_numeric(f: FuncSample<'_>, z: &Cx, p: &ParamSet<Cx>) -> Result<Cx> {
    let rep = BasicRep::new(p)?;
    let y = apply(&y_explicit(p)?, f, z, p)?;
    let yi = apply(&rep.y_inv()?, f, z, p)?;
    Ok(y + yi * &p.dual_radicand()?)
}

pub fn apply_l_numeric(f: FuncSample<'_>, z: &Cx, p: &ParamSet<Cx>) -> Result<Cx> {
    apply(&aw_operator(p)?, f, z, p)
}
