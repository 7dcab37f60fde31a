//! Conjugation of difference-reflection operators by ratios of Gaussians
//! `G_e(z) = 1 / (ez, e/z; q)_inf`.
//!
//! For `R = prod G_n / prod G_d`, conjugation `R A R^{-1}` multiplies the term
//! at shift `w = q^k z^eps` by `R(z) / R(w)`, and each factor
//! `G_e(z) / G_e(w)` is a rational function of `z`.

use super::basic::{aw_operator, BasicRep};
use super::automorphism::{automorphism_images, Images};
use super::ops::{DiffRefOp, Shift};
use super::relations::{report_from_residual, RelationReport};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::params::{ParamMapName, ParamSet};
use crate::scalar::Field;

/// Largest supported `|k|` in a shift ratio.
pub const MAX_SHIFT: i64 = 64;

/// `R = prod_i G_{num_i}(z) / prod_j G_{den_j}(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRatio<S> {
    pub num: Vec<S>,
    pub den: Vec<S>,
}

impl<S: Field> GaussRatio<S> {
    pub fn single(e: S) -> Self {
        GaussRatio {
            num: vec![e],
            den: Vec::new(),
        }
    }

    pub fn inverse(&self) -> Self {
        GaussRatio {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }
}

/// Binomial factors of `(x z^sigma; q)_k^{e}` for any integer `k` and
/// `e = +-1`, in the convention of [`RatFunc::with_factors`] (positive powers
/// divide).
fn qpoch_factors<S: Field>(x: &S, sigma: i64, q: &S, k: i64, e: i32, out: &mut Vec<(S, i64, i32)>) -> Result<()> {
    let (start, len, e) = if k >= 0 { (x.clone(), k, e) } else { (x.clone() * &q.powi(k)?, -k, -e) };
    let mut c = start;
    for _ in 0..len {
        out.push((c.clone(), sigma, -e));
        c = c * q;
    }
    Ok(())
}

/// Factors of `(G_e(z) / G_e(q^k z^eps))^{pw}`.
fn gaussian_shift_factors<S: Field>(e: &S, s: Shift, q: &S, pw: i32, out: &mut Vec<(S, i64, i32)>) -> Result<()> {
    if s.k.abs() > MAX_SHIFT {
        return Err(Error::UnsupportedShift(s.k));
    }
    let x = e.clone() * &q.powi(-s.k)?;
    if s.eps == 1 {
        // (e q^{-k}/z; q)_k / (e z; q)_k
        qpoch_factors(&x, -1, q, s.k, pw, out)?;
        qpoch_factors(e, 1, q, s.k, -pw, out)
    } else {
        // (e q^{-k} z; q)_k / (e/z; q)_k
        qpoch_factors(&x, 1, q, s.k, pw, out)?;
        qpoch_factors(e, -1, q, s.k, -pw, out)
    }
}

/// `G_e(z) / G_e(q^k z^eps)`.
pub fn gaussian_shift_ratio<S: Field>(e: &S, s: Shift, q: &S) -> Result<RatFunc<S>> {
    let mut f = Vec::new();
    gaussian_shift_factors(e, s, q, 1, &mut f)?;
    RatFunc::with_factors(LaurentPoly::constant(q.one_like()), f)
}

/// `R(z) / R(q^k z^eps)` for a Gaussian ratio `R`.
pub fn ratio_shift_factor<S: Field>(r: &GaussRatio<S>, s: Shift, q: &S) -> Result<RatFunc<S>> {
    let mut f = Vec::new();
    for e in &r.num {
        gaussian_shift_factors(e, s, q, 1, &mut f)?;
    }
    for e in &r.den {
        gaussian_shift_factors(e, s, q, -1, &mut f)?;
    }
    RatFunc::with_factors(LaurentPoly::constant(q.one_like()), f)
}

/// `R A R^{-1}`.
pub fn conjugate_by_gaussian_ratio<S: Field>(a: &DiffRefOp<S>, r: &GaussRatio<S>) -> Result<DiffRefOp<S>> {
    let q = a.q().clone();
    a.map_terms(|s| ratio_shift_factor(r, s, &q))
}

/// Gaussian ratio through which an automorphism descends to the basic
/// representation: `G_d` for `tau`, `G_{q/d}^{-1}` for `tau^{-1}`, and
/// `G_c / G_{q/d}` for `t4`.
pub fn descending_ratio<S: Field>(name: ParamMapName, p: &ParamSet<S>) -> Result<GaussRatio<S>> {
    let qd = p.q.clone() / &p.d;
    Ok(match name {
        ParamMapName::Tau => GaussRatio::single(p.d.clone()),
        ParamMapName::TauInv => GaussRatio {
            num: Vec::new(),
            den: vec![qd],
        },
        ParamMapName::T4 => GaussRatio {
            num: vec![p.c.clone()],
            den: vec![qd],
        },
        _ => {
            return Err(Error::UnknownName(format!(
                "{name} is not implemented by Gaussian conjugation"
            )))
        }
    })
}

/// Checks `R pi_p(U) R^{-1} = pi_{target}(image(U))` for the generators.
fn verify_descent<S: Field>(name: ParamMapName, p: &ParamSet<S>, tol: f64) -> Result<Vec<RelationReport>> {
    let im: Images<S> = automorphism_images(name, p)?;
    let r = descending_ratio(name, p)?;
    let src = BasicRep::new(p)?;
    let tgt = BasicRep::new(&im.target)?;
    let mut out = Vec::new();
    for (g, op) in [
        (super::genexpr::Gen::T1, &src.t1),
        (super::genexpr::Gen::T0, &src.t0),
        (super::genexpr::Gen::Z, &src.z),
    ] {
        let lhs = conjugate_by_gaussian_ratio(op, &r)?;
        let rhs = im.image(g).realize(&tgt)?;
        out.push(report_from_residual(
            &format!("Gaussian conjugation realizes {name} on {}", g.name()),
            p,
            &lhs.sub(&rhs)?,
            tol,
        ));
    }
    Ok(out)
}

/// The Gaussian conjugation identities:
/// - `G_d T0(c,d) G_d^{-1} = q^{-1} c Z T0(c,q/d)^{-1}`,
/// - `G_{q/d}^{-1} T0(c,d) G_{q/d} = q^{-1} c T0(c,q/d)^{-1} Z`,
/// - `(G_c/G_{q/d}) U(a,b,c,d) (G_{q/d}/G_c) = q^{-1} cd U(a,b,q/d,q/c)` for
///   `U = T0, Y, D, L`,
/// - descent of `tau`, `tau^{-1}`, `t4` on all generators.
pub fn verify_gaussian_conjugations<S: Field>(p: &ParamSet<S>, tol: f64) -> Result<Vec<RelationReport>> {
    let (c, d, q) = (&p.c, &p.d, &p.q);
    let src = BasicRep::new(p)?;
    let p_tau = p.map(ParamMapName::Tau)?;
    let tau_rep = BasicRep::new(&p_tau)?;
    let cq = c.clone() / q;
    let mut out = Vec::new();

    let lhs = conjugate_by_gaussian_ratio(&src.t0, &GaussRatio::single(d.clone()))?;
    let rhs = tau_rep.z.compose(&tau_rep.t0_inv)?.scale(&cq);
    out.push(report_from_residual(
        "G_d T0(c,d) G_d^-1 = q^-1 c Z T0(c,q/d)^-1",
        p,
        &lhs.sub(&rhs)?,
        tol,
    ));

    let qd = q.clone() / d;
    let inv_g = GaussRatio {
        num: Vec::new(),
        den: vec![qd.clone()],
    };
    let lhs = conjugate_by_gaussian_ratio(&src.t0, &inv_g)?;
    let rhs = tau_rep.t0_inv.compose(&tau_rep.z)?.scale(&cq);
    out.push(report_from_residual(
        "G_{q/d}^-1 T0(c,d) G_{q/d} = q^-1 c T0(c,q/d)^-1 Z",
        p,
        &lhs.sub(&rhs)?,
        tol,
    ));

    let r = GaussRatio {
        num: vec![c.clone()],
        den: vec![qd],
    };
    let p4 = p.map(ParamMapName::T4)?;
    let rep4 = BasicRep::new(&p4)?;
    let k = c.clone() * d / q;
    for (name, a_src, a_tgt) in [
        ("T0", src.t0.clone(), rep4.t0.clone()),
        ("Y", src.y()?, rep4.y()?),
        ("D", src.d()?, rep4.d()?),
        ("L", aw_operator(p)?, aw_operator(&p4)?),
    ] {
        let lhs = conjugate_by_gaussian_ratio(&a_src, &r)?;
        out.push(report_from_residual(
            &format!("(G_c/G_{{q/d}}) {name}(a,b,c,d) (G_{{q/d}}/G_c) = q^-1 cd {name}(a,b,q/d,q/c)"),
            p,
            &lhs.sub(&a_tgt.scale(&k))?,
            tol,
        ));
    }

    for name in [ParamMapName::Tau, ParamMapName::TauInv, ParamMapName::T4] {
        out.extend(verify_descent(name, p, tol)?);
    }
    Ok(out)
}
