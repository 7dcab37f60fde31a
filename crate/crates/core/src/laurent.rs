//! Laurent polynomials in `z` and rational functions of `z`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Field, Rational};

/// Sparse Laurent polynomial `sum_k c_k z^k`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<S> {
    coeffs: BTreeMap<i64, S>,
}

impl<S: Field> Default for LaurentPoly<S> {
    fn default() -> Self {
        LaurentPoly::zero()
    }
}

impl<S: Field> LaurentPoly<S> {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(c: S, k: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(k, c);
        p
    }

    pub fn constant(c: S) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// `c0 + c1 z` style construction from `(exponent, coefficient)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, S)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Adds `c z^k`, dropping the entry if it cancels exactly.
    pub fn add_term(&mut self, k: i64, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&k) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.coeffs.remove(&k);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(k, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Option<&S> {
        self.coeffs.get(&k)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &S)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.values().next_back()
    }

    /// Any stored coefficient, used to build constants of matching precision.
    pub fn sample_coeff(&self) -> Option<&S> {
        self.coeffs.values().next()
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (*k, v.clone() * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Multiplies by `z^s`.
    pub fn shift(&self, s: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (k + s, v.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, v) in &o.coeffs {
            r.add_term(*k, v.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, v) in &o.coeffs {
            r.add_term(*k, -v.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = LaurentPoly::zero();
        for (i, a) in &self.coeffs {
            for (j, b) in &o.coeffs {
                r.add_term(i + j, a.clone() * b);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let one = match self.sample_coeff() {
            Some(c) => c.one_like(),
            None => return if n == 0 { panic!("0^0") } else { LaurentPoly::zero() },
        };
        let mut acc = LaurentPoly::constant(one);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f(z) -> f(z^{-1})`.
    pub fn invol(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (-k, v.clone())).collect(),
        }
    }

    /// `f(z) -> f(q^k z^eps)`: `c_n z^n -> c_n q^{kn} z^{eps n}`.
    pub fn substitute(&self, q: &S, k: i64, eps: i8) -> Result<Self> {
        let mut r = LaurentPoly::zero();
        if k == 0 {
            for (n, c) in &self.coeffs {
                r.add_term(*n * eps as i64, c.clone());
            }
            return Ok(r);
        }
        let qk = q.powi(k)?;
        let Some(lo) = self.min_exp() else {
            return Ok(r);
        };
        // q^{kn} for consecutive n by repeated multiplication
        let mut pw = qk.powi(lo)?;
        let mut n = lo;
        for (e, c) in &self.coeffs {
            while n < *e {
                pw = pw * &qk;
                n += 1;
            }
            r.add_term(*e * eps as i64, c.clone() * &pw);
        }
        Ok(r)
    }

    /// `f(z) -> f(lambda z)`.
    pub fn scale_arg(&self, lambda: &S) -> Result<Self> {
        let mut r = LaurentPoly::zero();
        for (n, c) in &self.coeffs {
            r.add_term(*n, c.clone() * &lambda.powi(*n)?);
        }
        Ok(r)
    }

    /// Evaluates at a nonzero point (Horner on both halves).
    pub fn eval(&self, z: &S) -> Result<S> {
        let zero = z.zero_like();
        if self.is_zero() {
            return Ok(zero);
        }
        let mut acc = zero;
        for (n, c) in &self.coeffs {
            acc = acc + c.clone() * &z.powi(*n)?;
        }
        Ok(acc)
    }

    /// Symmetric under `z -> z^{-1}` (exactly, or to `tol` for numeric data).
    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.approx_eq(&self.invol(), tol)
    }

    /// Coefficientwise comparison: exact for exact fields, otherwise relative to
    /// the largest coefficient.
    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        if S::EXACT {
            return self == o;
        }
        let diff = self.sub(o);
        let scale = self.max_abs().max(o.max_abs());
        diff.max_abs() <= tol * scale.max(f64::MIN_POSITIVE)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|v| v.abs_f64()).fold(0.0, f64::max)
    }

    /// Drops coefficients below `tol` times the largest one (numeric cleanup).
    pub fn chop(&self, tol: f64) -> Self {
        let m = self.max_abs();
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, v)| v.abs_f64() > tol * m)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Exact division `self / o`, `None` when there is a remainder.
    pub fn div_exact(&self, o: &Self) -> Result<Option<Self>> {
        if o.is_zero() {
            return Err(Error::DivisionByZero("Laurent division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Some(LaurentPoly::zero()));
        }
        let (sa, a) = self.to_dense();
        let (sb, b) = o.to_dense();
        let (qt, r) = dense::divrem(&a, &b)?;
        let rem_zero = if S::EXACT {
            r.iter().all(|c| c.is_zero())
        } else {
            let scale = self.max_abs();
            r.iter().all(|c| c.abs_f64() <= 1e-25 * scale)
        };
        if !rem_zero {
            return Ok(None);
        }
        Ok(Some(LaurentPoly::from_dense(sa - sb, &qt)))
    }

    /// `(lowest exponent, ascending dense coefficients)`.
    pub fn to_dense(&self) -> (i64, Vec<S>) {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(l), Some(h)) => (l, h),
            _ => return (0, Vec::new()),
        };
        let zero = self.sample_coeff().unwrap().zero_like();
        let mut v = vec![zero; (hi - lo + 1) as usize];
        for (k, c) in &self.coeffs {
            v[(k - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub fn from_dense(lo: i64, v: &[S]) -> Self {
        LaurentPoly::from_terms(v.iter().enumerate().map(|(i, c)| (lo + i as i64, c.clone())))
    }

    /// Coefficients keyed by exponent as strings (`{"-1": "3/2", ...}`) for
    /// exact data or decimal pairs for numeric data.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, c) in &self.coeffs {
            m.insert(k.to_string(), Value::String(c.to_string()));
        }
        Value::Object(m)
    }
}

impl LaurentPoly<Rational> {
    /// Parses the JSON form produced by [`LaurentPoly::to_json`].
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("expected an object".into()))?;
        let mut p = LaurentPoly::zero();
        for (k, c) in obj {
            let e: i64 = k.parse().map_err(|_| Error::Parse(format!("bad exponent {k}")))?;
            let s = c
                .as_str()
                .ok_or_else(|| Error::Parse("coefficient must be a string".into()))?;
            p.add_term(e, crate::scalar::parse_rational(s)?);
        }
        Ok(p)
    }

    pub fn to_cx(&self, prec: u32) -> LaurentPoly<crate::scalar::Cx> {
        LaurentPoly::from_terms(
            self.terms()
                .map(|(k, c)| (k, crate::scalar::Cx::from_rational(prec, c))),
        )
    }
}

impl<S: Field> fmt::Display for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        Ok(())
    }
}

/// Formats an exact Laurent polynomial with `p/q` coefficients.
pub fn format_exact(p: &LaurentPoly<Rational>) -> String {
    let parts: Vec<String> = p
        .terms()
        .map(|(k, c)| format!("{}*z^{}", format_rational(c), k))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Dense univariate polynomial helpers (ascending coefficient vectors).
pub(crate) mod dense {
    use super::*;

    pub fn trim<S: Field>(v: &mut Vec<S>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    /// Polynomial long division; `b` must have a nonzero leading coefficient.
    pub fn divrem<S: Field>(a: &[S], b: &[S]) -> Result<(Vec<S>, Vec<S>)> {
        let mut b = b.to_vec();
        trim(&mut b);
        let lead = b
            .last()
            .ok_or_else(|| Error::DivisionByZero("zero polynomial".into()))?
            .clone();
        let lead_inv = lead.inv()?;
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            let zero = lead.zero_like();
            return Ok((vec![zero], r));
        }
        let zero = lead.zero_like();
        let mut qt = vec![zero; r.len() - b.len() + 1];
        for i in (0..qt.len()).rev() {
            let c = r[i + b.len() - 1].clone() * &lead_inv;
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    let t = r[i + j].clone() - c.clone() * bj;
                    r[i + j] = t;
                }
                // exact cancellation of the leading term
                r[i + b.len() - 1] = lead.zero_like();
            }
            qt[i] = c;
        }
        trim(&mut r);
        Ok((qt, r))
    }
}

/// `1 - alpha z^n` with `n >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Binomial<S> {
    pub alpha: S,
    pub n: i64,
}

impl<S: Field> Binomial<S> {
    pub fn to_laurent(&self) -> LaurentPoly<S> {
        let one = self.alpha.one_like();
        LaurentPoly::from_terms([(0, one), (self.n, -self.alpha.clone())])
    }

    fn same(&self, o: &Self) -> bool {
        if self.n != o.n {
            return false;
        }
        if S::EXACT {
            self.alpha == o.alpha
        } else {
            self.alpha.rel_dist(&o.alpha) < SAME_FACTOR_TOL
        }
    }
}

/// Relative distance below which two numeric binomial factors are merged.
const SAME_FACTOR_TOL: f64 = 1e-30;

/// Rational function `num / prod_i (1 - alpha_i z^{n_i})^{m_i}`.
///
/// Every denominator met by the operator calculus is a product of such
/// binomials, so sums use the least common multiple of the factor lists and
/// no polynomial gcd is ever computed. Factors that divide the numerator are
/// cancelled; the representation is not unique, so equality is decided by
/// subtraction.
#[derive(Clone, Debug)]
pub struct RatFunc<S> {
    num: LaurentPoly<S>,
    den: Vec<(Binomial<S>, u32)>,
}

impl<S: Field> PartialEq for RatFunc<S> {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).map(|d| d.is_zero()).unwrap_or(false)
    }
}

impl<S: Field> RatFunc<S> {
    /// `num / den` where `den` is a monomial times at most one binomial.
    pub fn new(num: LaurentPoly<S>, den: LaurentPoly<S>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("rational function with zero denominator".into()));
        }
        let lo = den.min_exp().unwrap();
        let c0 = den.coeff(lo).unwrap().clone();
        let c0i = c0.inv()?;
        let num = num.shift(-lo).scale(&c0i);
        match den.len() {
            1 => Ok(RatFunc::from_laurent(num, &c0)),
            2 => {
                let hi = den.max_exp().unwrap();
                let alpha = -(den.coeff(hi).unwrap().clone() * &c0i);
                RatFunc::with_factors(num, [(alpha, hi - lo, 1)])
            }
            _ => Err(Error::Internal(
                "denominator must be a product of binomials; use RatFunc::with_factors".into(),
            )),
        }
    }

    /// `num * prod (1 - alpha z^n)^{-power}` for `n != 0` and any integer power.
    pub fn with_factors(num: LaurentPoly<S>, factors: impl IntoIterator<Item = (S, i64, i32)>) -> Result<Self> {
        let mut num = num;
        let mut den: Vec<(Binomial<S>, u32)> = Vec::new();
        for (alpha, n, power) in factors {
            if n == 0 || alpha.is_zero() {
                return Err(Error::Internal("degenerate binomial factor".into()));
            }
            if power < 0 {
                let b = LaurentPoly::from_terms([(0, alpha.one_like()), (n, -alpha.clone())]);
                num = num.mul(&b.pow(power.unsigned_abs()));
                continue;
            }
            if power == 0 {
                continue;
            }
            let b = if n > 0 {
                Binomial { alpha, n }
            } else {
                // 1 - a z^{-n'} = -a z^{-n'} (1 - a^{-1} z^{n'})
                let ai = alpha.inv()?;
                let m = LaurentPoly::monomial(-ai.clone(), -n);
                num = num.mul(&m.pow(power as u32));
                Binomial { alpha: ai, n: -n }
            };
            push_factor(&mut den, b, power as u32);
        }
        let mut r = RatFunc { num, den };
        r.cancel()?;
        Ok(r)
    }

    pub fn from_laurent(p: LaurentPoly<S>, _one: &S) -> Self {
        RatFunc { num: p, den: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        RatFunc {
            num: LaurentPoly::constant(c),
            den: Vec::new(),
        }
    }

    pub fn zero(_like: &S) -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: Vec::new(),
        }
    }

    pub fn num(&self) -> &LaurentPoly<S> {
        &self.num
    }

    pub fn factors(&self) -> &[(Binomial<S>, u32)] {
        &self.den
    }

    /// The expanded denominator.
    pub fn den(&self) -> LaurentPoly<S> {
        let one = match self.den.first() {
            Some((b, _)) => b.alpha.one_like(),
            None => match self.num.sample_coeff() {
                Some(c) => c.one_like(),
                None => return LaurentPoly::zero(),
            },
        };
        let mut acc = LaurentPoly::constant(one);
        for (b, m) in &self.den {
            acc = acc.mul(&b.to_laurent().pow(*m));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Divides out denominator factors that divide the numerator.
    fn cancel(&mut self) -> Result<()> {
        if self.num.is_zero() {
            self.den.clear();
            return Ok(());
        }
        let mut i = 0;
        while i < self.den.len() {
            let b = self.den[i].0.to_laurent();
            while self.den[i].1 > 0 {
                match self.num.div_exact(&b)? {
                    Some(p) => {
                        self.num = p;
                        self.den[i].1 -= 1;
                    }
                    None => break,
                }
            }
            if self.den[i].1 == 0 {
                self.den.swap_remove(i);
            } else {
                i += 1;
            }
        }
        Ok(())
    }

    /// Returns the Laurent polynomial if there is no denominator.
    pub fn as_laurent(&self) -> Option<&LaurentPoly<S>> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn to_laurent(&self) -> Result<LaurentPoly<S>> {
        match self.as_laurent() {
            Some(p) => Ok(p.clone()),
            None => Err(Error::NotLaurentPolynomial),
        }
    }

    /// Numerator multiplier bringing `self` to the denominator `lcm`.
    fn lift(&self, lcm: &[(Binomial<S>, u32)]) -> LaurentPoly<S> {
        let mut num = self.num.clone();
        for (b, m) in lcm {
            let have = self
                .den
                .iter()
                .find(|(c, _)| c.same(b))
                .map(|(_, k)| *k)
                .unwrap_or(0);
            if *m > have {
                num = num.mul(&b.to_laurent().pow(m - have));
            }
        }
        num
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        let mut lcm = self.den.clone();
        for (b, m) in &o.den {
            match lcm.iter_mut().find(|(c, _)| c.same(b)) {
                Some(e) => e.1 = e.1.max(*m),
                None => lcm.push((b.clone(), *m)),
            }
        }
        let mut r = RatFunc {
            num: self.lift(&lcm).add(&o.lift(&lcm)),
            den: lcm,
        };
        r.cancel()?;
        Ok(r)
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.is_zero() || o.is_zero() {
            return Ok(RatFunc {
                num: LaurentPoly::zero(),
                den: Vec::new(),
            });
        }
        let mut den = self.den.clone();
        for (b, m) in &o.den {
            push_factor(&mut den, b.clone(), *m);
        }
        let mut r = RatFunc {
            num: self.num.mul(&o.num),
            den,
        };
        if !o.den.is_empty() || !self.den.is_empty() {
            r.cancel()?;
        }
        Ok(r)
    }

    /// Division by a rational function whose numerator is a monomial times at
    /// most one binomial.
    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero("rational function".into()));
        }
        let inv = RatFunc::new(o.den(), o.num.clone())?;
        self.mul(&inv)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return RatFunc::zero(c);
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_laurent(&self, p: &LaurentPoly<S>) -> Result<Self> {
        let mut r = RatFunc {
            num: self.num.mul(p),
            den: self.den.clone(),
        };
        r.cancel()?;
        Ok(r)
    }

    /// `r(z) -> r(q^k z^eps)`.
    pub fn substitute(&self, q: &S, k: i64, eps: i8) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let num = self.num.substitute(q, k, eps)?;
        if self.den.is_empty() {
            return Ok(RatFunc { num, den: Vec::new() });
        }
        let factors: Vec<(S, i64, i32)> = self
            .den
            .iter()
            .map(|(b, m)| Ok((b.alpha.clone() * &q.powi(k * b.n)?, b.n * eps as i64, *m as i32)))
            .collect::<Result<_>>()?;
        RatFunc::with_factors(num, factors)
    }

    pub fn eval(&self, z: &S) -> Result<S> {
        let mut d = z.one_like();
        for (b, m) in &self.den {
            let v = b.to_laurent().eval(z)?;
            d = d * &v.powi(*m as i64)?;
        }
        if d.is_zero() {
            return Err(Error::Pole(z.to_string()));
        }
        Ok(self.num.eval(z)? / d)
    }

    /// Equality up to `tol` (exact for exact fields).
    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        if S::EXACT {
            return self == o;
        }
        self.num.mul(&o.den()).approx_eq(&o.num.mul(&self.den()), tol)
    }

    /// Number of stored numerator monomials plus denominator factors.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }
}

fn push_factor<S: Field>(den: &mut Vec<(Binomial<S>, u32)>, b: Binomial<S>, m: u32) {
    match den.iter_mut().find(|(c, _)| c.same(&b)) {
        Some(e) => e.1 += m,
        None => den.push((b, m)),
    }
}

impl<S: Field> fmt::Display for RatFunc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_laurent() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "[{}] / [{}]", self.num, self.den()),
        }
    }
}

/// Symmetric Laurent polynomial stored in the basis `(z + 1/z)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymLaurentPoly<S> {
    /// `coeffs[k]` multiplies `(z + z^{-1})^k`.
    pub coeffs: Vec<S>,
}

impl<S: Field> SymLaurentPoly<S> {
    /// Converts a symmetric Laurent polynomial; fails if it is not symmetric.
    pub fn from_laurent(p: &LaurentPoly<S>, tol: f64) -> Result<Self> {
        if !p.is_symmetric(tol) {
            return Err(Error::InvalidParams("polynomial is not symmetric".into()));
        }
        let mut rest = p.clone();
        let n = rest.max_exp().unwrap_or(0).max(0);
        let one = match p.sample_coeff() {
            Some(c) => c.one_like(),
            None => return Ok(SymLaurentPoly { coeffs: Vec::new() }),
        };
        let x = LaurentPoly::from_terms([(1, one.clone()), (-1, one.clone())]);
        let mut coeffs = vec![one.zero_like(); n as usize + 1];
        for k in (0..=n).rev() {
            let c = rest.coeff(k).cloned().unwrap_or_else(|| one.zero_like());
            if !c.is_zero() {
                rest = rest.sub(&x.pow(k as u32).scale(&c));
            }
            coeffs[k as usize] = c;
        }
        Ok(SymLaurentPoly { coeffs })
    }

    pub fn to_laurent(&self) -> LaurentPoly<S> {
        let mut acc = LaurentPoly::zero();
        let Some(one) = self.coeffs.first().map(|c| c.one_like()) else {
            return acc;
        };
        let x = LaurentPoly::from_terms([(1, one.clone()), (-1, one.clone())]);
        let mut pw = LaurentPoly::constant(one);
        for c in &self.coeffs {
            acc = acc.add(&pw.scale(c));
            pw = pw.mul(&x);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn lp(terms: &[(i64, i64, i64)]) -> LaurentPoly<Rational> {
        LaurentPoly::from_terms(terms.iter().map(|&(k, n, d)| (k, rat(n, d))))
    }

    #[test]
    fn substitute_matches_definition() {
        // 2z^{-1} + 3z^2 under z -> q^2 / z with q = 1/3
        let p = lp(&[(-1, 2, 1), (2, 3, 1)]);
        let s = p.substitute(&rat(1, 3), 2, -1).unwrap();
        assert_eq!(s, lp(&[(1, 18, 1), (-2, 1, 27)]));
    }

    #[test]
    fn ratfunc_reduces_common_factor() {
        // (1 - z^2) / (1 - z) = 1 + z
        let n = lp(&[(0, 1, 1), (2, -1, 1)]);
        let d = lp(&[(0, 1, 1), (1, -1, 1)]);
        let r = RatFunc::new(n, d).unwrap();
        assert_eq!(r.as_laurent().unwrap(), &lp(&[(0, 1, 1), (1, 1, 1)]));
    }

    #[test]
    fn ratfunc_moves_monomials_to_numerator() {
        let n = lp(&[(0, 1, 1)]);
        let d = lp(&[(2, 2, 1)]);
        let r = RatFunc::new(n, d).unwrap();
        assert_eq!(r.as_laurent().unwrap(), &lp(&[(-2, 1, 2)]));
    }

    #[test]
    fn sym_basis_roundtrip() {
        let p = lp(&[(-2, 1, 1), (0, 5, 1), (2, 1, 1), (1, 3, 1), (-1, 3, 1)]);
        let s = SymLaurentPoly::from_laurent(&p, 0.0).unwrap();
        assert_eq!(s.coeffs, vec![rat(3, 1), rat(3, 1), rat(1, 1)]);
        assert_eq!(s.to_laurent(), p);
    }

    #[test]
    fn json_roundtrip() {
        let p = lp(&[(-3, 7, 2), (4, -1, 9)]);
        let j = p.to_json();
        assert_eq!(j["-3"], "7/2");
        assert_eq!(LaurentPoly::from_json(&j).unwrap(), p);
    }

    #[test]
    fn exact_division() {
        let a = lp(&[(0, 1, 1), (3, -1, 1)]);
        let b = lp(&[(0, 1, 1), (1, -1, 1)]);
        assert_eq!(a.div_exact(&b).unwrap().unwrap(), lp(&[(0, 1, 1), (1, 1, 1), (2, 1, 1)]));
        assert!(a.div_exact(&lp(&[(0, 1, 1), (1, 1, 1)])).unwrap().is_none());
    }
}
