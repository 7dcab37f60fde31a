//! Formal linear combinations of words in the generators `T1^{±1}, T0^{±1}, Z^{±1}`.

use std::collections::BTreeMap;
use std::fmt;

use super::basic::BasicRep;
use super::ops::DiffRefOp;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    T1,
    T1Inv,
    T0,
    T0Inv,
    Z,
    ZInv,
}

impl Gen {
    pub const ALL: [Gen; 6] = [Gen::T1, Gen::T1Inv, Gen::T0, Gen::T0Inv, Gen::Z, Gen::ZInv];

    pub fn inverse(self) -> Gen {
        match self {
            Gen::T1 => Gen::T1Inv,
            Gen::T1Inv => Gen::T1,
            Gen::T0 => Gen::T0Inv,
            Gen::T0Inv => Gen::T0,
            Gen::Z => Gen::ZInv,
            Gen::ZInv => Gen::Z,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Gen::T1 => "T1",
            Gen::T1Inv => "T1^-1",
            Gen::T0 => "T0",
            Gen::T0Inv => "T0^-1",
            Gen::Z => "Z",
            Gen::ZInv => "Z^-1",
        }
    }
}

pub type Word = Vec<Gen>;

/// Concatenation with free cancellation of `g g^{-1}`.
pub fn word_mul(a: &[Gen], b: &[Gen]) -> Word {
    let mut out: Word = a.to_vec();
    for &g in b {
        if out.last() == Some(&g.inverse()) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

pub fn word_inverse(w: &[Gen]) -> Word {
    w.iter().rev().map(|g| g.inverse()).collect()
}

/// `sum_i c_i w_i` with scalar coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct GenExpr<S> {
    terms: BTreeMap<Word, S>,
}

impl<S: Field> GenExpr<S> {
    pub fn zero() -> Self {
        GenExpr {
            terms: BTreeMap::new(),
        }
    }

    pub fn word(c: S, w: Word) -> Self {
        let mut e = GenExpr::zero();
        e.add_term(w, c);
        e
    }

    pub fn gen(g: Gen, one: &S) -> Self {
        GenExpr::word(one.one_like(), vec![g])
    }

    pub fn scalar(c: S) -> Self {
        GenExpr::word(c, Vec::new())
    }

    fn add_term(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut r = GenExpr::zero();
        for (w, v) in &self.terms {
            r.add_term(w.clone(), v.clone() * c);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = GenExpr::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                r.add_term(word_mul(w1, w2), c1.clone() * c2);
            }
        }
        r
    }

    /// The single `(coefficient, word)` pair if the expression is a monomial.
    pub fn as_monomial(&self) -> Option<(&S, &Word)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(w, c)| (c, w))
        } else {
            None
        }
    }

    /// Inverse of a monomial `c w`: `c^{-1} w^{-1}`.
    pub fn inverse(&self) -> Result<Self> {
        let (c, w) = self
            .as_monomial()
            .ok_or_else(|| Error::Internal("inverse of a non-monomial expression".into()))?;
        Ok(GenExpr::word(c.inv()?, word_inverse(w)))
    }

    /// Replaces every generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[GenExpr<S>; 6]) -> Self {
        let mut out = GenExpr::zero();
        for (w, c) in &self.terms {
            let mut acc = GenExpr::scalar(c.clone());
            for g in w {
                acc = acc.mul(&images[g.index()]);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Realizes the expression as an operator in the basic representation.
    pub fn realize(&self, rep: &BasicRep<S>) -> Result<DiffRefOp<S>> {
        let q = &rep.params.q;
        let mut out = DiffRefOp::zero(q);
        for (w, c) in &self.terms {
            let mut acc: Option<DiffRefOp<S>> = None;
            for g in w {
                let op = match g {
                    Gen::T1 => &rep.t1,
                    Gen::T1Inv => &rep.t1_inv,
                    Gen::T0 => &rep.t0,
                    Gen::T0Inv => &rep.t0_inv,
                    Gen::Z => &rep.z,
                    Gen::ZInv => &rep.z_inv,
                };
                acc = Some(match acc {
                    None => op.clone(),
                    Some(a) => a.compose(op)?,
                });
            }
            let term = match acc {
                None => DiffRefOp::scalar(q, c.clone()),
                Some(a) => a.scale(c),
            };
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

impl<S: Field> fmt::Display for GenExpr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for g in w {
                write!(f, " {}", g.name())?;
            }
        }
        Ok(())
    }
}

/// Identity images `g -> g`.
pub fn identity_images<S: Field>(one: &S) -> [GenExpr<S>; 6] {
    Gen::ALL.map(|g| GenExpr::gen(g, one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn free_cancellation() {
        let w = word_mul(&[Gen::T1, Gen::Z], &[Gen::ZInv, Gen::T1Inv, Gen::T0]);
        assert_eq!(w, vec![Gen::T0]);
        assert_eq!(word_inverse(&[Gen::T1, Gen::Z]), vec![Gen::ZInv, Gen::T1Inv]);
    }

    #[test]
    fn monomial_inverse() {
        let e: GenExpr<Rational> = GenExpr::word(rat(2, 3), vec![Gen::T1, Gen::ZInv]);
        let i = e.inverse().unwrap();
        let prod = e.mul(&i);
        assert_eq!(prod, GenExpr::scalar(rat(1, 1)));
    }
}
