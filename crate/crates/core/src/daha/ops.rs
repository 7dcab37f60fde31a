//! Difference-reflection operators `f(z) -> sum r(z) f(q^k z^eps)` with rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::laurent::{LaurentPoly, RatFunc};
use crate::scalar::Field;

/// The argument map `z -> q^k z^eps`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shift {
    pub eps: i8,
    pub k: i64,
}

impl Shift {
    pub const ID: Shift = Shift { eps: 1, k: 0 };

    pub fn new(eps: i8, k: i64) -> Shift {
        debug_assert!(eps == 1 || eps == -1);
        Shift { eps, k }
    }

    /// `self` applied after `inner`: `z -> q^{k_in} z^{eps_in}` followed by
    /// `w -> q^k w^eps` gives `z -> q^{k + eps k_in} z^{eps eps_in}`.
    pub fn after(self, inner: Shift) -> Shift {
        Shift {
            eps: self.eps * inner.eps,
            k: self.k + self.eps as i64 * inner.k,
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.eps, self.k) {
            (1, 0) => write!(f, "z"),
            (1, k) => write!(f, "q^{k} z"),
            (_, 0) => write!(f, "1/z"),
            (_, k) => write!(f, "q^{k}/z"),
        }
    }
}

/// A finite sum `sum_(eps,k) r_(eps,k)(z) f(q^k z^eps)`.
#[derive(Clone, Debug)]
pub struct DiffRefOp<S> {
    q: S,
    terms: BTreeMap<Shift, RatFunc<S>>,
}

impl<S: Field> PartialEq for DiffRefOp<S> {
    fn eq(&self, o: &Self) -> bool {
        self.q == o.q
            && self.terms.len() == o.terms.len()
            && self.terms.iter().zip(&o.terms).all(|((s, r), (t, u))| s == t && r == u)
    }
}

impl<S: Field> DiffRefOp<S> {
    pub fn zero(q: &S) -> Self {
        DiffRefOp {
            q: q.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(q: &S) -> Self {
        DiffRefOp::scalar(q, q.one_like())
    }

    pub fn scalar(q: &S, c: S) -> Self {
        let mut op = DiffRefOp::zero(q);
        op.add_term(Shift::ID, RatFunc::constant(c)).expect("constant term");
        op
    }

    /// Multiplication by `r(z)`.
    pub fn multiplication(q: &S, r: RatFunc<S>) -> Self {
        let mut op = DiffRefOp::zero(q);
        op.add_term(Shift::ID, r).expect("single term");
        op
    }

    pub fn from_terms(q: &S, terms: impl IntoIterator<Item = (Shift, RatFunc<S>)>) -> Result<Self> {
        let mut op = DiffRefOp::zero(q);
        for (s, r) in terms {
            op.add_term(s, r)?;
        }
        Ok(op)
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn add_term(&mut self, s: Shift, r: RatFunc<S>) -> Result<()> {
        if r.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&s) {
            Some(v) => {
                let t = v.add(&r)?;
                if t.is_zero() {
                    self.terms.remove(&s);
                } else {
                    *v = t;
                }
            }
            None => {
                self.terms.insert(s, r);
            }
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Shift, &RatFunc<S>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: Shift) -> Option<&RatFunc<S>> {
        self.terms.get(&s)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let mut r = self.clone();
        for (s, c) in &o.terms {
            r.add_term(*s, c.clone())?;
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let mut r = self.clone();
        for (s, c) in &o.terms {
            r.add_term(*s, c.neg())?;
        }
        Ok(r)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return DiffRefOp::zero(&self.q);
        }
        DiffRefOp {
            q: self.q.clone(),
            terms: self.terms.iter().map(|(s, r)| (*s, r.scale(c))).collect(),
        }
    }

    /// `self + c`.
    pub fn add_scalar(&self, c: &S) -> Result<Self> {
        self.add(&DiffRefOp::scalar(&self.q, c.clone()))
    }

    /// Composition `self ∘ o` (apply `o` first).
    ///
    /// Term `(A, s_A)` followed by `(B, s_B)` contributes
    /// `r_A(z) r_B(s_A z)` at the shift `s_B ∘ s_A`.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        let mut out = DiffRefOp::zero(&self.q);
        for (sa, ra) in &self.terms {
            for (sb, rb) in &o.terms {
                let shifted = rb.substitute(&self.q, sa.k, sa.eps)?;
                out.add_term(sb.after(*sa), ra.mul(&shifted)?)?;
            }
        }
        Ok(out)
    }

    /// Applies the operator to a Laurent polynomial.
    pub fn apply(&self, f: &LaurentPoly<S>) -> Result<RatFunc<S>> {
        let one = self.q.one_like();
        let mut acc = RatFunc::zero(&one);
        for (s, r) in &self.terms {
            let g = f.substitute(&self.q, s.k, s.eps)?;
            acc = acc.add(&r.mul_laurent(&g)?)?;
        }
        Ok(acc)
    }

    /// Applies the operator and insists on a Laurent polynomial result.
    pub fn apply_laurent(&self, f: &LaurentPoly<S>) -> Result<LaurentPoly<S>> {
        self.apply(f)?.to_laurent()
    }

    /// Applies the operator to a function given pointwise.
    pub fn apply_fn(&self, f: &dyn Fn(&S) -> Result<S>, z: &S) -> Result<S> {
        let mut acc = z.zero_like();
        for (s, r) in &self.terms {
            let w = self.q.powi(s.k)? * &z.powi(s.eps as i64)?;
            acc = acc + r.eval(z)? * &f(&w)?;
        }
        Ok(acc)
    }

    /// Equality as operators (exact, or numerically by cross multiplication).
    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        if S::EXACT {
            return self == o;
        }
        let keys: std::collections::BTreeSet<&Shift> = self.terms.keys().chain(o.terms.keys()).collect();
        keys.into_iter().all(|k| match (self.terms.get(k), o.terms.get(k)) {
            (Some(x), Some(y)) => x.approx_eq(y, tol),
            (Some(x), None) | (None, Some(x)) => x.num().max_abs() <= tol,
            (None, None) => true,
        })
    }

    /// Number of shifts at which `self - o` has a nonzero coefficient.
    pub fn residual_terms(&self, o: &Self) -> Result<usize> {
        Ok(self.sub(o)?.num_terms())
    }

    /// Multiplies every term `(eps, k)` by `m(eps, k)(z)`.
    pub fn map_terms(&self, m: impl Fn(Shift) -> Result<RatFunc<S>>) -> Result<Self> {
        let mut out = DiffRefOp::zero(&self.q);
        for (s, r) in &self.terms {
            out.add_term(*s, r.mul(&m(*s)?)?)?;
        }
        Ok(out)
    }
}

impl<S: Field> fmt::Display for DiffRefOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{{{r}}} f({s})")?;
        }
        Ok(())
    }
}

/// Convenience: builds `c0 + c1 z + ... ` as a Laurent polynomial.
pub(crate) fn poly<S: Field>(coeffs: &[(i64, S)]) -> LaurentPoly<S> {
    LaurentPoly::from_terms(coeffs.iter().cloned())
}
