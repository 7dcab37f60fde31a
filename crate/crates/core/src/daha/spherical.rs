//! Symmetric functions and the spherical part of the basic representation:
//! the decomposition `g = g1 - z^{-1}(1-az)(1-bz) g2` with symmetric `g1, g2`,
//! and identities involving the idempotent `e`.

use rand::Rng;

use super::basic::{aw_operator, mult_by, BasicRep};
use super::ops::DiffRefOp;
use super::relations::{report_from_residual, RelationReport};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, SymLaurentPoly};
use crate::params::ParamSet;
use crate::sampling::rng_for;
use crate::scalar::{rat, Field};

/// `z^{-1}(1 - az)(1 - bz)`.
pub fn antisym_factor<S: Field>(a: &S, b: &S) -> LaurentPoly<S> {
    let o = a.one_like();
    LaurentPoly::from_terms([(-1, o), (0, -(a.clone() + b)), (1, a.clone() * b)])
}

/// Splits `g = g1 - z^{-1}(1-az)(1-bz) g2` with `g1 = (T1 g + g)/(1 - ab)` and
/// `z^{-1}(1-az)(1-bz) g2 = (T1 g + ab g)/(1 - ab)`.
pub fn t1_decompose<S: Field>(g: &LaurentPoly<S>, p: &ParamSet<S>) -> Result<(SymLaurentPoly<S>, SymLaurentPoly<S>)> {
    let o = p.q.one_like();
    let ab = p.a.clone() * &p.b;
    let den = o.clone() - &ab;
    if den.negligible(1.0, 1e-30) {
        return Err(Error::DegenerateParams("ab = 1".into()));
    }
    let inv = den.inv()?;
    let t1g = super::basic::t1(p)?.apply_laurent(g)?;
    let g1 = t1g.add(g).scale(&inv);
    let h2 = t1g.add(&g.scale(&ab)).scale(&inv);
    let w = antisym_factor(&p.a, &p.b);
    let g2 = h2
        .div_exact(&w)?
        .ok_or_else(|| Error::Internal("(T1 + ab) g is not divisible by z^-1 (1-az)(1-bz)".into()))?;
    let tol = if S::EXACT { 0.0 } else { 1e-25 };
    if !g1.sub(&w.mul(&g2)).approx_eq(g, tol) {
        return Err(Error::Internal("decomposition does not reconstruct g".into()));
    }
    Ok((SymLaurentPoly::from_laurent(&g1, tol)?, SymLaurentPoly::from_laurent(&g2, tol)?))
}

/// Random symmetric Laurent polynomial `sum_k c_k (z^k + z^{-k})` of degree
/// at most `deg` with small rational coefficients.
pub fn random_symmetric<S: Field>(like: &S, deg: i64, seed: u64, index: u64) -> LaurentPoly<S> {
    let mut rng = rng_for(seed, index);
    let mut f = LaurentPoly::zero();
    for k in 0..=deg {
        let c = like.rational_like(&rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
        f.add_term(k, c.clone());
        if k != 0 {
            f.add_term(-k, c);
        }
    }
    f
}

fn commutator<S: Field>(a: &DiffRefOp<S>, b: &DiffRefOp<S>) -> Result<DiffRefOp<S>> {
    a.compose(b)?.sub(&b.compose(a)?)
}

/// `L f = D f` and `[T1, f(Z)] = 0` on `samples` random symmetric `f`, and
/// `[T1, X e] = [T1, D e] = 0`.
pub fn verify_spherical<S: Field>(p: &ParamSet<S>, samples: u64, seed: u64, tol: f64) -> Result<Vec<RelationReport>> {
    let rep = BasicRep::new(p)?;
    let l = aw_operator(p)?;
    let d = rep.d()?;
    let mut out = Vec::new();
    let mut worst_ld = 0usize;
    let mut worst_comm = 0usize;
    for i in 0..samples {
        let f = random_symmetric(&p.q, 1 + (i % 4) as i64, seed, i);
        let lf = l.apply(&f)?;
        let df = d.apply(&f)?;
        if !(if S::EXACT { lf == df } else { lf.approx_eq(&df, tol) }) {
            worst_ld += 1;
        }
        let c = commutator(&rep.t1, &mult_by(p, &f))?;
        if !report_from_residual("", p, &c, tol).pass {
            worst_comm += 1;
        }
    }
    let mk = |name: &str, bad: usize| RelationReport {
        relation: name.to_string(),
        params: p.to_string(),
        pass: bad == 0,
        residual_terms: bad,
    };
    out.push(mk(&format!("L f = D f for {samples} random symmetric f"), worst_ld));
    out.push(mk(&format!("[T1, f(Z)] = 0 for {samples} random symmetric f"), worst_comm));
    let e = rep.idempotent()?;
    let xe = rep.x()?.compose(&e)?;
    let de = d.compose(&e)?;
    out.push(report_from_residual("[T1, X e] = 0", p, &commutator(&rep.t1, &xe)?, tol));
    out.push(report_from_residual("[T1, D e] = 0", p, &commutator(&rep.t1, &de)?, tol));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::exact_generic;

    #[test]
    fn decompose_symmetric_and_antisymmetric() {
        let p = exact_generic(5, 0);
        let o = p.q.one_like();
        let g = random_symmetric(&o, 3, 1, 2);
        let (g1, g2) = t1_decompose(&g, &p).unwrap();
        assert_eq!(g1.to_laurent(), g);
        assert!(g2.to_laurent().is_zero());
        let w = antisym_factor(&p.a, &p.b);
        let (g1, g2) = t1_decompose(&w, &p).unwrap();
        assert!(g1.to_laurent().is_zero());
        assert_eq!(g2.to_laurent(), LaurentPoly::constant(-o));
    }

    #[test]
    fn decompose_z_reconstructs() {
        let p = exact_generic(5, 1);
        let z = LaurentPoly::monomial(p.q.one_like(), 1);
        let (g1, g2) = t1_decompose(&z, &p).unwrap();
        let w = antisym_factor(&p.a, &p.b);
        assert_eq!(g1.to_laurent().sub(&w.mul(&g2.to_laurent())), z);
    }

    #[test]
    fn spherical_identities_exact() {
        let p = exact_generic(9, 0);
        for r in verify_spherical(&p, 10, 3, 0.0).unwrap() {
            assert!(r.pass, "{}", r.relation);
        }
    }
}
