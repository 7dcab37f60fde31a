//! Operators of the basic representation on Laurent polynomials.

use serde::{Deserialize, Serialize};

use super::ops::{poly, DiffRefOp, Shift};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::params::ParamSet;
use crate::scalar::Field;

/// Named operators in the basic representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OpName {
    T1,
    T1Inv,
    T0,
    T0Inv,
    Z,
    ZInv,
    Y,
    YInv,
    D,
    X,
    /// The idempotent `(1 - ab)^{-1} (T1 + 1)`.
    E,
    /// Askey-Wilson second order q-difference operator.
    L,
}

impl OpName {
    pub fn parse(s: &str) -> Result<OpName> {
        Ok(match s {
            "T1" => OpName::T1,
            "T1inv" | "T1^-1" => OpName::T1Inv,
            "T0" => OpName::T0,
            "T0inv" | "T0^-1" => OpName::T0Inv,
            "Z" => OpName::Z,
            "Zinv" | "Z^-1" => OpName::ZInv,
            "Y" => OpName::Y,
            "Yinv" | "Y^-1" => OpName::YInv,
            "D" => OpName::D,
            "X" => OpName::X,
            "e" | "E" => OpName::E,
            "L" => OpName::L,
            _ => return Err(Error::UnknownName(s.to_string())),
        })
    }
}

fn one<S: Field>(p: &ParamSet<S>) -> S {
    p.q.one_like()
}

/// `T1 f(z) = ((a+b)z - (1+ab))/(1-z^2) f(z) + (1-az)(1-bz)/(1-z^2) f(1/z)`.
pub fn t1<S: Field>(p: &ParamSet<S>) -> Result<DiffRefOp<S>> {
    let (a, b) = (&p.a, &p.b);
    let o = one(p);
    let ab = a.clone() * b;
    let den = || [(o.clone(), 2, 1)];
    let c_id = RatFunc::with_factors(poly(&[(1, a.clone() + b), (0, -(o.clone() + &ab))]), den())?;
    let c_ref = RatFunc::with_factors(poly(&[(0, o.clone()), (1, -(a.clone() + b)), (2, ab)]), den())?;
    DiffRefOp::from_terms(&p.q, [(Shift::ID, c_id), (Shift::new(-1, 0), c_ref)])
}

/// `T0 f(z) = ((cd/q+1)z^2 - (c+d)z)/(q-z^2) f(z) - (c-z)(d-z)/(q-z^2) f(q/z)`.
pub fn t0<S: Field>(p: &ParamSet<S>) -> Result<DiffRefOp<S>> {
    let (c, d, q) = (&p.c, &p.d, &p.q);
    let o = one(p);
    let cd = c.clone() * d;
    // q - z^2 = q (1 - q^{-1} z^2)
    let qi = q.inv()?;
    let den = || [(qi.clone(), 2, 1)];
    let c_id = RatFunc::with_factors(
        poly(&[(2, cd.clone() / q + &o), (1, -(c.clone() + d))]).scale(&qi),
        den(),
    )?;
    let c_ref = RatFunc::with_factors(poly(&[(0, -cd), (1, c.clone() + d), (2, -o)]).scale(&qi), den())?;
    DiffRefOp::from_terms(q, [(Shift::ID, c_id), (Shift::new(-1, 1), c_ref)])
}

/// `T1^{-1} = -(ab)^{-1} T1 - (1 + (ab)^{-1})`.
pub fn t1_inv<S: Field>(p: &ParamSet<S>) -> Result<DiffRefOp<S>> {
    let abi = (p.a.clone() * &p.b).inv()?;
    t1(p)?.scale(&-abi.clone()).add_scalar(&-(one(p) + &abi))
}

/// `T0^{-1} = -q(cd)^{-1} T0 - (1 + q(cd)^{-1})`.
pub fn t0_inv<S: Field>(p: &ParamSet<S>) -> Result<DiffRefOp<S>> {
    let r = p.q.clone() * &(p.c.clone() * &p.d).inv()?;
    t0(p)?.scale(&-r.clone()).add_scalar(&-(one(p) + &r))
}

pub fn z_op<S: Field>(p: &ParamSet<S>) -> DiffRefOp<S> {
    DiffRefOp::multiplication(&p.q, RatFunc::from_laurent(LaurentPoly::monomial(one(p), 1), &one(p)))
}

pub fn z_inv<S: Field>(p: &ParamSet<S>) -> DiffRefOp<S> {
    DiffRefOp::multiplication(&p.q, RatFunc::from_laurent(LaurentPoly::monomial(one(p), -1), &one(p)))
}

/// Multiplication by a Laurent polynomial `f(Z)`.
pub fn mult_by<S: Field>(p: &ParamSet<S>, f: &LaurentPoly<S>) -> DiffRefOp<S> {
    DiffRefOp::multiplication(&p.q, RatFunc::from_laurent(f.clone(), &one(p)))
}

/// The Askey-Wilson operator
/// `L = A(z)(f(qz) - f(z)) + B(z)(f(q^{-1}z) - f(z)) + (1 + q^{-1}abcd) f(z)`
/// with `A = (1-az)(1-bz)(1-cz)(1-dz)/((1-z^2)(1-qz^2))` and
/// `B = (a-z)(b-z)(c-z)(d-z)/((1-z^2)(q-z^2))`.
pub fn aw_operator<S: Field>(p: &ParamSet<S>) -> Result<DiffRefOp<S>> {
    let o = one(p);
    let q = &p.q;
    let mut num_a = LaurentPoly::constant(o.clone());
    let mut num_b = LaurentPoly::constant(o.clone());
    for e in p.entries() {
        num_a = num_a.mul(&poly(&[(0, o.clone()), (1, -e.clone())]));
        num_b = num_b.mul(&poly(&[(0, e.clone()), (1, -o.clone())]));
    }
    let qi = q.inv()?;
    let a_fn = RatFunc::with_factors(num_a, [(o.clone(), 2, 1), (q.clone(), 2, 1)])?;
    let b_fn = RatFunc::with_factors(num_b.scale(&qi), [(o.clone(), 2, 1), (qi.clone(), 2, 1)])?;
    let c0 = RatFunc::constant(o.clone() + &(p.abcd() / q));
    let diag = c0.sub(&a_fn)?.sub(&b_fn)?;
    DiffRefOp::from_terms(q, [(Shift::ID, diag), (Shift::new(1, 1), a_fn), (Shift::new(1, -1), b_fn)])
}

/// The four-term closed form of `Y = T1 T0`, built independently of the
/// composition routine.
pub fn y_explicit<S: Field>(p: &ParamSet<S>) -> Result<DiffRefOp<S>> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let o = one(p);
    let ab = a.clone() * b;
    let cd = c.clone() * d;
    let lin = |x: &S| poly(&[(0, o.clone()), (1, -x.clone())]);
    let qi = q.inv()?;
    // binomials 1 - z^2, 1 - q^{-1} z^2 (times q gives q - z^2), 1 - q z^2
    let one_m_z2 = (o.clone(), 2, 1);
    let q_m_z2 = (qi.clone(), 2, 1);
    let one_m_qz2 = (q.clone(), 2, 1);
    let qi2 = qi.clone() * &qi;
    // 1 + ab - (a+b) z
    let u = poly(&[(0, o.clone() + &ab), (1, -(a.clone() + b))]);
    // (c+d) q - (cd + q) z
    let v = poly(&[(0, (c.clone() + d) * q), (1, -(cd.clone() + q))]);
    let z = LaurentPoly::monomial(o.clone(), 1);
    let t_id = RatFunc::with_factors(z.mul(&u).mul(&v).scale(&qi2), [one_m_z2.clone(), q_m_z2.clone()])?;
    let t_q = RatFunc::with_factors(
        lin(a).mul(&lin(b)).mul(&lin(c)).mul(&lin(d)),
        [one_m_z2.clone(), one_m_qz2.clone()],
    )?;
    // (c+d) q z - (cd + q)
    let w = poly(&[(1, (c.clone() + d) * q), (0, -(cd.clone() + q))]);
    let t_inv = RatFunc::with_factors(lin(a).mul(&lin(b)).mul(&w).scale(&qi), [one_m_z2.clone(), one_m_qz2])?;
    let cz = poly(&[(0, c.clone()), (1, -o.clone())]);
    let dz = poly(&[(0, d.clone()), (1, -o.clone())]);
    let t_qinv = RatFunc::with_factors(cz.mul(&dz).mul(&u).scale(&qi), [one_m_z2, q_m_z2])?;
    DiffRefOp::from_terms(
        q,
        [
            (Shift::ID, t_id),
            (Shift::new(1, 1), t_q),
            (Shift::new(-1, 0), t_inv),
            (Shift::new(-1, 1), t_qinv),
        ],
    )
}

/// All basic operators at one parameter tuple, built once.
#[derive(Clone, Debug)]
pub struct BasicRep<S> {
    pub params: ParamSet<S>,
    pub t1: DiffRefOp<S>,
    pub t1_inv: DiffRefOp<S>,
    pub t0: DiffRefOp<S>,
    pub t0_inv: DiffRefOp<S>,
    pub z: DiffRefOp<S>,
    pub z_inv: DiffRefOp<S>,
}

impl<S: Field> BasicRep<S> {
    pub fn new(p: &ParamSet<S>) -> Result<Self> {
        Ok(BasicRep {
            params: p.clone(),
            t1: t1(p)?,
            t1_inv: t1_inv(p)?,
            t0: t0(p)?,
            t0_inv: t0_inv(p)?,
            z: z_op(p),
            z_inv: z_inv(p),
        })
    }

    pub fn y(&self) -> Result<DiffRefOp<S>> {
        self.t1.compose(&self.t0)
    }

    pub fn y_inv(&self) -> Result<DiffRefOp<S>> {
        self.t0_inv.compose(&self.t1_inv)
    }

    /// `D = Y + q^{-1} abcd Y^{-1}`.
    pub fn d(&self) -> Result<DiffRefOp<S>> {
        let c = self.params.dual_radicand()?;
        self.y()?.add(&self.y_inv()?.scale(&c))
    }

    /// `X = Z + Z^{-1}`.
    pub fn x(&self) -> Result<DiffRefOp<S>> {
        self.z.add(&self.z_inv)
    }

    /// `e = (1 - ab)^{-1} (T1 + 1)`.
    pub fn idempotent(&self) -> Result<DiffRefOp<S>> {
        let p = &self.params;
        let o = p.q.one_like();
        let f = (o.clone() - p.a.clone() * &p.b).inv()?;
        Ok(self.t1.add_scalar(&o)?.scale(&f))
    }

    pub fn op(&self, name: OpName) -> Result<DiffRefOp<S>> {
        Ok(match name {
            OpName::T1 => self.t1.clone(),
            OpName::T1Inv => self.t1_inv.clone(),
            OpName::T0 => self.t0.clone(),
            OpName::T0Inv => self.t0_inv.clone(),
            OpName::Z => self.z.clone(),
            OpName::ZInv => self.z_inv.clone(),
            OpName::Y => self.y()?,
            OpName::YInv => self.y_inv()?,
            OpName::D => self.d()?,
            OpName::X => self.x()?,
            OpName::E => self.idempotent()?,
            OpName::L => aw_operator(&self.params)?,
        })
    }
}

/// Builds a single basic operator.
pub fn basic_op<S: Field>(name: OpName, p: &ParamSet<S>) -> Result<DiffRefOp<S>> {
    BasicRep::new(p)?.op(name)
}
