//! Askey-Wilson polynomials as exact Laurent polynomials: symmetric
//! (`E_n^+`, `p_n`, monic `P_n^+`), anti-symmetric (`P_n^-`, `E_n^-`),
//! `T0`-(anti)symmetric (`P_n^{dagger +-}`) and non-symmetric (`P_n`, `E_n`,
//! `n` in `Z`), together with the identities connecting them.
//!
//! All constructions sum the terminating series directly; nothing is built
//! from a three-term recurrence.

use serde::{Deserialize, Serialize};

use crate::check::{Acc, Check};
use crate::daha::basic::{aw_operator, t0, t1, y_explicit, BasicRep};
use crate::daha::spherical::antisym_factor;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::params::ParamSet;
use crate::qkernels::{bhs, bhs_guard_bits, qpoch, qpoch_multi, SeriesConfig};
use crate::scalar::Field;

/// Relative size below which a denominator counts as vanishing.
const POLE_TOL: f64 = 1e-30;

fn guard<S: Field>(x: S, what: &str) -> Result<S> {
    if x.negligible(1.0, POLE_TOL) {
        return Err(Error::PoleInDenominator(what.to_string()));
    }
    Ok(x)
}

fn degenerate<S: Field>(x: S, what: &str) -> Result<S> {
    if x.negligible(1.0, POLE_TOL) {
        return Err(Error::DegenerateParams(format!("{what} vanishes")));
    }
    Ok(x)
}

/// `lambda_n = q^{-n} + q^{n-1} abcd`.
pub fn eigenvalue<S: Field>(n: i64, p: &ParamSet<S>) -> Result<S> {
    Ok(p.q.powi(-n)? + p.q.powi(n - 1)? * &p.abcd())
}

/// `(1 - xz)(1 - x/z)`.
fn pair_factor<S: Field>(x: &S) -> LaurentPoly<S> {
    let o = x.one_like();
    LaurentPoly::from_terms([(-1, -x.clone()), (0, o + &(x.clone() * x)), (1, -x.clone())])
}

/// `(xz, x/z; q)_k`.
pub fn pair_poch<S: Field>(x: &S, q: &S, k: usize) -> LaurentPoly<S> {
    let mut acc = LaurentPoly::constant(x.one_like());
    let mut xq = x.clone();
    for _ in 0..k {
        acc = acc.mul(&pair_factor(&xq));
        xq = xq * q;
    }
    acc
}

/// Parameter tuple with entries multiplied by the given factors.
fn rescaled<S: Field>(p: &ParamSet<S>, f: [&S; 4]) -> ParamSet<S> {
    ParamSet::raw(
        p.a.clone() * f[0],
        p.b.clone() * f[1],
        p.c.clone() * f[2],
        p.d.clone() * f[3],
        p.q.clone(),
    )
}

fn lin<S: Field>(c0: S, c1: S) -> LaurentPoly<S> {
    LaurentPoly::from_terms([(0, c0), (1, c1)])
}

/// `E_n^+(z) = 4phi3(q^{-n}, q^{n-1}abcd, az, a/z; ab, ac, ad; q, q)`.
pub fn aw_e_plus<S: Field>(n: usize, p: &ParamSet<S>) -> Result<LaurentPoly<S>> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let o = q.one_like();
    let qn = q.powi(-(n as i64))?;
    let big = q.powi(n as i64 - 1)? * &p.abcd();
    let (ab, ac, ad) = (a.clone() * b, a.clone() * c, a.clone() * d);
    let mut coef = o.clone();
    let mut pc = LaurentPoly::constant(o.clone());
    let mut acc = pc.clone();
    let mut qj = o.clone();
    for _ in 0..n {
        let num = (o.clone() - qn.clone() * &qj) * (o.clone() - big.clone() * &qj) * q;
        let den = (o.clone() - ab.clone() * &qj)
            * (o.clone() - ac.clone() * &qj)
            * (o.clone() - ad.clone() * &qj)
            * (o.clone() - q.clone() * &qj);
        coef = coef * &num / guard(den, "(ab, ac, ad; q)_n")?;
        pc = pc.mul(&pair_factor(&(a.clone() * &qj)));
        acc = acc.add(&pc.scale(&coef));
        qj = qj * q;
    }
    Ok(acc)
}

/// `E_n^+(z)` at a point, by summing the terminating series numerically.
pub fn aw_e_plus_at<S: Field>(n: usize, z: &S, p: &ParamSet<S>, cfg: &SeriesConfig) -> Result<S> {
    if n == 0 {
        return Ok(p.q.one_like());
    }
    let inputs = |z: &S, p: &ParamSet<S>| -> Result<([S; 4], [S; 3])> {
        let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
        Ok((
            [
                q.powi(-(n as i64))?,
                q.powi(n as i64 - 1)? * &p.abcd(),
                a.clone() * z,
                a.clone() / z.clone(),
            ],
            [a.clone() * b, a.clone() * c, a.clone() * d],
        ))
    };
    let (num, den) = inputs(z, p)?;
    let guard = bhs_guard_bits(&num, &den, &p.q, &p.q, cfg);
    if guard == 0 {
        return Ok(bhs(&num, &den, &p.q, &p.q, cfg)?.value);
    }
    // the cancellation also amplifies the rounding of q^-n etc., so those are
    // formed at the raised precision
    let base = p.q.precision();
    let bits = base + guard;
    let pl = p.convert(|x| x.with_precision(bits));
    let (num, den) = inputs(&z.with_precision(bits), &pl)?;
    Ok(bhs(&num, &den, &pl.q, &pl.q, cfg)?.value.with_precision(base))
}

/// `p_n = a^{-n} sum_k (abq^k, acq^k, adq^k; q)_{n-k}
/// (q^{-n}, q^{n-1}abcd; q)_k / (q; q)_k q^k (az, a/z; q)_k`.
pub fn aw_p<S: Field>(n: usize, p: &ParamSet<S>) -> Result<LaurentPoly<S>> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let n = n as i64;
    let big = q.powi(n - 1)? * &p.abcd();
    let qn = q.powi(-n)?;
    let mut acc = LaurentPoly::zero();
    for k in 0..=n {
        let qk = q.powi(k)?;
        let head = qpoch_multi(
            &[a.clone() * b * &qk, a.clone() * c * &qk, a.clone() * d * &qk],
            q,
            n - k,
        )?;
        let tail = qpoch_multi(&[qn.clone(), big.clone()], q, k)? / qpoch(q, q, k)? * &qk;
        acc = acc.add(&pair_poch(a, q, k as usize).scale(&(head * &tail)));
    }
    Ok(acc.scale(&a.powi(-n)?))
}

/// Monic `P_n^+ = p_n / (q^{n-1}abcd; q)_n`.
pub fn aw_p_plus_monic<S: Field>(n: usize, p: &ParamSet<S>) -> Result<LaurentPoly<S>> {
    let big = p.q.powi(n as i64 - 1)? * &p.abcd();
    let den = guard(qpoch(&big, &p.q, n as i64)?, "(q^{n-1}abcd; q)_n")?;
    Ok(aw_p(n, p)?.scale(&den.inv()?))
}

/// `(ab, ac, ad; q)_n / ((q^{n-1}abcd; q)_n a^n)`, so that `P_n^+ = k E_n^+`.
pub fn monic_constant<S: Field>(n: usize, p: &ParamSet<S>) -> Result<S> {
    let (a, q) = (&p.a, &p.q);
    let n = n as i64;
    let num = qpoch_multi(&[a.clone() * &p.b, a.clone() * &p.c, a.clone() * &p.d], q, n)?;
    let den = qpoch(&(q.powi(n - 1)? * &p.abcd()), q, n)? * &a.powi(n)?;
    Ok(num / guard(den, "(q^{n-1}abcd; q)_n")?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Antisym {
    /// `P_n^- = (ab)^{-1} z^{-1}(1-az)(1-bz) P_{n-1}^+(z; qa, qb, c, d)`.
    PMinus,
    /// `E_n^- = z^{-1}(1-az)(1-bz) E_{n-1}^+(z; qa, qb, c, d)`.
    EMinus,
    /// `P_n^{dagger -} = q^{(n-1)/2} z^{-1}(c-z)(d-z)
    /// P_{n-1}^+(q^{-1/2} z; q^{1/2}(a, b, c, d))`.
    PDaggerMinus,
    /// `P_n^{dagger +} = q^{n/2} P_n^+(q^{-1/2} z; q^{1/2}a, q^{1/2}b, q^{-1/2}c, q^{-1/2}d)`.
    PDaggerPlus,
}

impl Antisym {
    pub fn parse(s: &str) -> Result<Antisym> {
        Ok(match s {
            "P-" | "p-minus" => Antisym::PMinus,
            "E-" | "e-minus" => Antisym::EMinus,
            "Pdagger-" | "p-dagger-minus" => Antisym::PDaggerMinus,
            "Pdagger+" | "p-dagger-plus" => Antisym::PDaggerPlus,
            _ => return Err(Error::UnknownName(s.to_string())),
        })
    }
}

pub fn aw_antisym<S: Field>(n: usize, p: &ParamSet<S>, variant: Antisym) -> Result<LaurentPoly<S>> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let o = q.one_like();
    if n == 0 && variant != Antisym::PDaggerPlus {
        return Err(Error::InvalidParams("anti-symmetric polynomials start at n = 1".into()));
    }
    match variant {
        Antisym::PMinus | Antisym::EMinus => {
            let ps = rescaled(p, [q, q, &o, &o]);
            let w = antisym_factor(a, b);
            if variant == Antisym::PMinus {
                let k = (a.clone() * b).inv()?;
                Ok(w.mul(&aw_p_plus_monic(n - 1, &ps)?).scale(&k))
            } else {
                Ok(w.mul(&aw_e_plus(n - 1, &ps)?))
            }
        }
        Antisym::PDaggerMinus => {
            let s = q.sqrt()?;
            let si = s.inv()?;
            let ps = rescaled(p, [&s, &s, &s, &s]);
            let inner = aw_p_plus_monic(n - 1, &ps)?.scale_arg(&si)?;
            // z^{-1}(c - z)(d - z)
            let w = LaurentPoly::from_terms([(-1, c.clone() * d), (0, -(c.clone() + d)), (1, o.clone())]);
            Ok(w.mul(&inner).scale(&s.powi(n as i64 - 1)?))
        }
        Antisym::PDaggerPlus => {
            let s = q.sqrt()?;
            let si = s.inv()?;
            let ps = rescaled(p, [&s, &s, &si, &si]);
            Ok(aw_p_plus_monic(n, &ps)?.scale_arg(&si)?.scale(&s.powi(n as i64)?))
        }
    }
}

/// Route used to assemble the non-symmetric polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NsRoute {
    /// From `P_n^+` and `P_n^-`.
    Ab,
    /// From `P_n^+` and `P_n^{dagger -}` (needs `q^{1/2}`).
    Dagger,
}

/// Non-symmetric `P_n` (`normalized = false`) or `E_n = P_n / P_n(a^{-1})`.
pub fn aw_nonsym<S: Field>(n: i64, p: &ParamSet<S>, route: NsRoute, normalized: bool) -> Result<LaurentPoly<S>> {
    let o = p.q.one_like();
    if n == 0 {
        return Ok(LaurentPoly::constant(o));
    }
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let m = n.unsigned_abs() as usize;
    let mi = m as i64;
    let ab = a.clone() * b;
    let abcd = p.abcd();
    let qm = q.powi(mi)?;
    let big = q.powi(mi - 1)? * &abcd;
    let pp = aw_p_plus_monic(m, p)?;
    let pn = match route {
        NsRoute::Ab => {
            let pm = aw_antisym(m, p, Antisym::PMinus)?;
            if n < 0 {
                let k = ab.clone() / degenerate(ab.clone() - &o, "ab - 1")?;
                pp.sub(&pm).scale(&k)
            } else {
                let den = degenerate(
                    (o.clone() - &ab) * &(o.clone() - q.powi(2 * mi - 1)? * &abcd),
                    "(1 - ab)(1 - q^{2n-1}abcd)",
                )?;
                let k1 = (o.clone() - qm.clone() * &ab) * &(o.clone() - big.clone()) / den.clone();
                let cd = c.clone() * d;
                let k2 = ab.clone() * &(o.clone() - &qm) * &(o.clone() - q.powi(mi - 1)? * &cd) / den;
                pp.scale(&k1).sub(&pm.scale(&k2))
            }
        }
        NsRoute::Dagger => {
            let pd = aw_antisym(m, p, Antisym::PDaggerMinus)?;
            if n < 0 {
                let cd = c.clone() * d;
                let k = degenerate(o.clone() - q.powi(mi - 1)? * &cd, "1 - q^{n-1}cd")?.inv()?;
                pp.sub(&pd).scale(&k)
            } else {
                let den = degenerate(o.clone() - q.powi(2 * mi - 1)? * &abcd, "1 - q^{2n-1}abcd")?;
                let k1 = qm.clone() * &(o.clone() - big.clone()) / den.clone();
                let k2 = (o.clone() - &qm) / den;
                pp.scale(&k1).add(&pd.scale(&k2))
            }
        }
    };
    if !normalized {
        return Ok(pn);
    }
    let v = degenerate(pn.eval(&a.inv()?)?, "P_n(a^{-1})")?;
    Ok(pn.scale(&v.inv()?))
}

/// Constant `k_n` with `P_n = k_n E_n`:
/// `k_{-n} = ab/(ab-1) (ab, ac, ad; q)_n / ((q^{n-1}abcd; q)_n a^n)` and
/// `k_n = (qab, ac, ad; q)_n / ((q^n abcd; q)_n a^n)`.
pub fn nonsym_constant<S: Field>(n: i64, p: &ParamSet<S>) -> Result<S> {
    let (a, b, q) = (&p.a, &p.b, &p.q);
    let o = q.one_like();
    let m = n.abs();
    let ab = a.clone() * b;
    let (ac, ad) = (a.clone() * &p.c, a.clone() * &p.d);
    if n < 0 {
        let k = ab.clone() / degenerate(ab.clone() - &o, "ab - 1")?;
        let num = qpoch_multi(&[ab, ac, ad], q, m)?;
        let den = qpoch(&(q.powi(m - 1)? * &p.abcd()), q, m)? * &a.powi(m)?;
        Ok(k * &num / guard(den, "(q^{n-1}abcd; q)_n")?)
    } else {
        let num = qpoch_multi(&[q.clone() * &ab, ac, ad], q, m)?;
        let den = qpoch(&(q.powi(m)? * &p.abcd()), q, m)? * &a.powi(m)?;
        Ok(num / guard(den, "(q^n abcd; q)_n")?)
    }
}

/// Coefficient `c` in `E_{+-n} = E_n^+ - c E_n^-` (`n > 0`):
/// `(1 - q^n ab)(1 - q^{n-1}abcd) / (q^{n-1} b (1-ab)(1-qab)(1-ac)(1-ad))` for
/// `-n` and `a(1 - q^n)(1 - q^{n-1}cd) / (q^{n-1}(1-ab)(1-qab)(1-ac)(1-ad))` for `n`.
pub fn e_minus_coefficient<S: Field>(n: i64, p: &ParamSet<S>) -> Result<S> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let o = q.one_like();
    let m = n.abs();
    let ab = a.clone() * b;
    let qm1 = q.powi(m - 1)?;
    let base = qm1.clone()
        * &(o.clone() - &ab)
        * &(o.clone() - q.clone() * &ab)
        * &(o.clone() - a.clone() * c)
        * &(o.clone() - a.clone() * d);
    let base = guard(base, "(1-ab)(1-qab)(1-ac)(1-ad)")?;
    if n < 0 {
        let num = (o.clone() - q.powi(m)? * &ab) * &(o.clone() - qm1 * &p.abcd());
        Ok(num / (base * b))
    } else {
        let num = a.clone() * &(o.clone() - q.powi(m)?) * &(o.clone() - qm1 * c * d);
        Ok(num / base)
    }
}

/// `E_n` through `E_{+-n} = E_n^+ - c E_n^-`.
pub fn aw_nonsym_e_closed<S: Field>(n: i64, p: &ParamSet<S>) -> Result<LaurentPoly<S>> {
    if n == 0 {
        return Ok(LaurentPoly::constant(p.q.one_like()));
    }
    let m = n.unsigned_abs() as usize;
    let ep = aw_e_plus(m, p)?;
    let em = aw_antisym(m, p, Antisym::EMinus)?;
    Ok(ep.sub(&em.scale(&e_minus_coefficient(n, p)?)))
}

/// `E_n(z)` at a point through `E_{+-n} = E_n^+ - c E_n^-`, with
/// `E_n^-(z) = z^{-1}(1-az)(1-bz) E_{n-1}^+(z; qa, qb, c, d)`.
pub fn aw_nonsym_e_at<S: Field>(n: i64, z: &S, p: &ParamSet<S>, cfg: &SeriesConfig) -> Result<S> {
    let o = p.q.one_like();
    if n == 0 {
        return Ok(o);
    }
    let m = n.unsigned_abs() as usize;
    let ep = aw_e_plus_at(m, z, p, cfg)?;
    let ps = rescaled(p, [&p.q, &p.q, &o, &o]);
    let w = (o.clone() - p.a.clone() * z) * &(o.clone() - p.b.clone() * z) / z.clone();
    let em = w * &aw_e_plus_at(m - 1, z, &ps, cfg)?;
    Ok(ep - e_minus_coefficient(n, p)? * &em)
}

/// `z_e(n) = e q^n` for `n >= 0` and `e^{-1} q^{-|n|}` for `n < 0`.
pub fn spectral_point<S: Field>(e: &S, n: i64, q: &S) -> Result<S> {
    if n >= 0 {
        Ok(e.clone() * &q.powi(n)?)
    } else {
        Ok(e.inv()? * &q.powi(n)?)
    }
}

// ---------------------------------------------------------------------------
// Identity checks

fn eq_tol<S: Field>(tol: f64) -> f64 {
    if S::EXACT {
        0.0
    } else {
        tol
    }
}

fn perms4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let v = [i, j, k, l];
                    let mut seen = [false; 4];
                    v.iter().for_each(|&x| seen[x] = true);
                    if seen.iter().all(|&s| s) {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

fn permuted<S: Field>(p: &ParamSet<S>, pi: [usize; 4]) -> ParamSet<S> {
    let e = p.entries();
    ParamSet::raw(
        e[pi[0]].clone(),
        e[pi[1]].clone(),
        e[pi[2]].clone(),
        e[pi[3]].clone(),
        p.q.clone(),
    )
}

fn leading_is_monic<S: Field>(f: &LaurentPoly<S>, n: i64, tol: f64) -> f64 {
    let lead = f.coeff(n).cloned().unwrap_or_else(|| f.sample_coeff().map(|c| c.zero_like()).unwrap());
    let mut r = crate::check::scalar_residual(&lead, &lead.one_like());
    let out_of_range = f.max_exp().unwrap_or(0) > n || f.min_exp().unwrap_or(0) < -n;
    if out_of_range {
        r = r.max(1.0);
    }
    if r <= tol {
        0.0
    } else {
        r
    }
}

/// Identities of the symmetric polynomials that need no square roots.
pub fn symmetric_checks<S: Field>(p: &ParamSet<S>, tol: f64) -> Vec<Check> {
    let t = eq_tol::<S>(tol);
    let mut out = Vec::new();

    let mut acc = Acc::new("aw-poly/L-eigen", "L E_n^+ = (q^-n + abcd q^(n-1)) E_n^+, n <= 12", t);
    acc.run(|acc| {
        let l = aw_operator(p)?;
        for n in 0..=12usize {
            let e = aw_e_plus(n, p)?;
            acc.poly(&l.apply_laurent(&e)?, &e.scale(&eigenvalue(n as i64, p)?));
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new("aw-poly/normalization", "E_n^+(a) = E_n^+(1/a) = 1, n <= 10", t);
    acc.run(|acc| {
        let o = p.q.one_like();
        for n in 0..=10usize {
            let e = aw_e_plus(n, p)?;
            acc.scalar(&e.eval(&p.a)?, &o);
            acc.scalar(&e.eval(&p.a.inv()?)?, &o);
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new(
        "aw-poly/s4-symmetry",
        "p_n(z; a,b,c,d) invariant under all permutations of (a,b,c,d), n <= 8",
        t,
    );
    acc.run(|acc| {
        let perms = perms4();
        for n in 0..=8usize {
            let base = aw_p(n, p)?;
            for pi in &perms[1..] {
                acc.poly(&aw_p(n, &permuted(p, *pi))?, &base);
            }
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new(
        "aw-poly/p-vs-E",
        "E_n^+ = a^n / (ab, ac, ad; q)_n p_n, n <= 10",
        t,
    );
    acc.run(|acc| {
        for n in 0..=10usize {
            let ni = n as i64;
            let k = p.a.powi(ni)?
                / qpoch_multi(&[p.a.clone() * &p.b, p.a.clone() * &p.c, p.a.clone() * &p.d], &p.q, ni)?;
            acc.poly(&aw_e_plus(n, p)?, &aw_p(n, p)?.scale(&k));
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new(
        "aw-poly/monic",
        "P_n^+ = z^n + lower terms and P_n^+ = (ab,ac,ad;q)_n/((q^(n-1)abcd;q)_n a^n) E_n^+, n <= 8",
        t,
    );
    acc.run(|acc| {
        for n in 0..=8usize {
            let pp = aw_p_plus_monic(n, p)?;
            acc.residual(leading_is_monic(&pp, n as i64, t));
            acc.poly(&pp, &aw_e_plus(n, p)?.scale(&monic_constant(n, p)?));
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new(
        "aw-poly/sears",
        "E_n^+(z;a,b,c,d) = (a/b)^n (bc,bd;q)_n/(ac,ad;q)_n E_n^+(z;b,a,c,d), n <= 10",
        t,
    );
    acc.run(|acc| {
        let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
        let swapped = ParamSet::raw(b.clone(), a.clone(), c.clone(), d.clone(), q.clone());
        for n in 0..=10i64 {
            let k = (a.clone() / b).powi(n)? * &qpoch_multi(&[b.clone() * c, b.clone() * d], q, n)?
                / qpoch_multi(&[a.clone() * c, a.clone() * d], q, n)?;
            acc.poly(&aw_e_plus(n as usize, p)?, &aw_e_plus(n as usize, &swapped)?.scale(&k));
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new(
        "aw-poly/antisym-characterization",
        "T1 P_n^+ = -ab P_n^+, T1 P_n^- = -P_n^-, D P_n^- = lambda_n P_n^-, P_n^- monic, P_n^-(1/a) = 0, n <= 8",
        t,
    );
    acc.run(|acc| {
        let rep = BasicRep::new(p)?;
        let dop = rep.d()?;
        let ab = p.a.clone() * &p.b;
        for n in 1..=8usize {
            let pp = aw_p_plus_monic(n, p)?;
            acc.poly(&rep.t1.apply_laurent(&pp)?, &pp.scale(&(-ab.clone())));
            let pm = aw_antisym(n, p, Antisym::PMinus)?;
            acc.poly(&rep.t1.apply_laurent(&pm)?, &pm.neg());
            acc.poly(&dop.apply_laurent(&pm)?, &pm.scale(&eigenvalue(n as i64, p)?));
            acc.residual(leading_is_monic(&pm, n as i64, t));
            acc.scalar(&pm.eval(&p.a.inv()?)?, &p.q.zero_like());
        }
        Ok(())
    });
    out.push(acc.finish());

    out.push(t4_polynomial_check(p, tol));
    out
}

/// `p_n(z;a,b,c,d) = (-c)^{-(n-m)} q^{-(n-m)(n-m-1)/2} (q^m ab;q)_{n-m}
/// (cz,c/z;q)_{n-m} p_m(z;a,b,q/d,q/c)` at `d = q^{m-n+1}/c`.
pub fn t4_polynomial_check<S: Field>(p: &ParamSet<S>, tol: f64) -> Check {
    let t = eq_tol::<S>(tol);
    let mut acc = Acc::new(
        "aw-poly/t4-polynomial",
        "p_n(z;a,b,c,d) = (-c)^-(n-m) q^-((n-m)(n-m-1)/2) (q^m ab;q)_(n-m) (cz,c/z;q)_(n-m) p_m(z;a,b,q/d,q/c) when cd = q^(m-n+1), 0 <= m <= n <= m+4 <= 8",
        t,
    );
    acc.run(|acc| {
        let (a, b, c, q) = (&p.a, &p.b, &p.c, &p.q);
        for m in 0..=4i64 {
            for n in m..=m + 4 {
                let k = n - m;
                let d = q.powi(m - n + 1)? / c.clone();
                let pn = ParamSet::raw(a.clone(), b.clone(), c.clone(), d.clone(), q.clone());
                let pm = ParamSet::raw(a.clone(), b.clone(), q.clone() / d.clone(), q.clone() / c.clone(), q.clone());
                let f = (-c.clone()).powi(-k)?
                    * &q.powi(-(k * (k - 1) / 2))?
                    * &qpoch(&(q.powi(m)? * a * b), q, k)?;
                let rhs = pair_poch(c, q, k as usize).mul(&aw_p(m as usize, &pm)?).scale(&f);
                acc.poly(&aw_p(n as usize, &pn)?, &rhs);
            }
        }
        Ok(())
    });
    acc.finish()
}

/// Identities that involve `q^{1/2}` (exact only when `q` is a square).
pub fn half_shift_checks<S: Field>(p: &ParamSet<S>, tol: f64) -> Vec<Check> {
    let t = eq_tol::<S>(tol);
    let mut out = Vec::new();
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let o = q.one_like();

    let mut acc = Acc::new(
        "aw-poly/q-derivative",
        "P_n^+(q^(1/2) z) - P_n^+(q^(-1/2) z) = (q^(n/2) - q^(-n/2)) (z - 1/z) P_(n-1)^+(z; q^(1/2)(a,b,c,d)), 1 <= n <= 8",
        t,
    );
    acc.run(|acc| {
        let s = q.sqrt()?;
        let si = s.inv()?;
        let ps = rescaled(p, [&s, &s, &s, &s]);
        let zz = LaurentPoly::from_terms([(1, o.clone()), (-1, -o.clone())]);
        for n in 1..=8usize {
            let pp = aw_p_plus_monic(n, p)?;
            let lhs = pp.scale_arg(&s)?.sub(&pp.scale_arg(&si)?);
            let k = s.powi(n as i64)? - s.powi(-(n as i64))?;
            let rhs = zz.mul(&aw_p_plus_monic(n - 1, &ps)?).scale(&k);
            acc.poly(&lhs, &rhs);
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new(
        "aw-poly/shift-combination",
        "z(1 - q^(-1/2)a/z)(1 - q^(-1/2)b/z) E_n^+(q^(-1/2)z) - z^-1 (1 - q^(-1/2)az)(1 - q^(-1/2)bz) E_n^+(q^(1/2)z) = (1 - ab/q)(z - 1/z) E_n^+(z; q^(-1/2)a, q^(-1/2)b, q^(1/2)c, q^(1/2)d), n <= 6",
        t,
    );
    acc.run(|acc| {
        let s = q.sqrt()?;
        let si = s.inv()?;
        let ps = rescaled(p, [&si, &si, &s, &s]);
        let (as_, bs) = (a.clone() * &si, b.clone() * &si);
        let left = LaurentPoly::from_terms([(1, o.clone()), (0, -(as_.clone() + &bs)), (-1, as_.clone() * &bs)]);
        let right = LaurentPoly::from_terms([(-1, o.clone()), (0, -(as_.clone() + &bs)), (1, as_.clone() * &bs)]);
        let zz = LaurentPoly::from_terms([(1, o.clone()), (-1, -o.clone())]);
        let k = o.clone() - a.clone() * b / q.clone();
        for n in 0..=6usize {
            let e = aw_e_plus(n, p)?;
            let lhs = left.mul(&e.scale_arg(&si)?).sub(&right.mul(&e.scale_arg(&s)?));
            let rhs = zz.mul(&aw_e_plus(n, &ps)?).scale(&k);
            acc.poly(&lhs, &rhs);
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new(
        "aw-poly/jacobi-specialization",
        "E_m^+(z; 1, -1, -q^(1/2), q^(1/2)) = (z^m + z^-m)/2, 1 <= m <= 8",
        t,
    );
    acc.run(|acc| {
        let s = q.sqrt()?;
        let pj = ParamSet::raw(o.clone(), -o.clone(), -s.clone(), s, q.clone());
        let half = o.clone() / o.int_like(2);
        for m in 1..=8i64 {
            let rhs = LaurentPoly::from_terms([(m, half.clone()), (-m, half.clone())]);
            acc.poly(&aw_e_plus(m as usize, &pj)?, &rhs);
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new(
        "aw-poly/dagger-characterization",
        "D P_n^(dagger+) = lambda_n P_n^(dagger+), T0 P_n^(dagger+) = -(cd/q) P_n^(dagger+), D P_n^(dagger-) = lambda_n P_n^(dagger-), T0 P_n^(dagger-) = -P_n^(dagger-), both monic, n <= 6",
        t,
    );
    acc.run(|acc| {
        let rep = BasicRep::new(p)?;
        let dop = rep.d()?;
        let t0op = t0(p)?;
        let cdq = c.clone() * d / q.clone();
        for n in 0..=6usize {
            let lam = eigenvalue(n as i64, p)?;
            let pdp = aw_antisym(n, p, Antisym::PDaggerPlus)?;
            acc.poly(&dop.apply_laurent(&pdp)?, &pdp.scale(&lam));
            acc.poly(&t0op.apply_laurent(&pdp)?, &pdp.scale(&(-cdq.clone())));
            acc.residual(leading_is_monic(&pdp, n as i64, t));
            if n >= 1 {
                let pdm = aw_antisym(n, p, Antisym::PDaggerMinus)?;
                acc.poly(&dop.apply_laurent(&pdm)?, &pdm.scale(&lam));
                acc.poly(&t0op.apply_laurent(&pdm)?, &pdm.neg());
                acc.residual(leading_is_monic(&pdm, n as i64, t));
            }
        }
        Ok(())
    });
    out.push(acc.finish());
    out
}

/// `E_n^+(a^{-1} q^{-m}; p) = E_m^+(ã^{-1} q^{-n}; p̃)` for `m, n <= 6`.
pub fn duality_check<S: Field>(p: &ParamSet<S>, tol: f64) -> Check {
    let t = eq_tol::<S>(tol);
    let mut acc = Acc::new(
        "aw-poly/duality",
        "E_n^+(a^-1 q^-m; a,b,c,d) = E_m^+(at^-1 q^-n; at,bt,ct,dt), m, n <= 6",
        t,
    );
    acc.run(|acc| {
        let pt = p.dual()?;
        let q = &p.q;
        let ep: Vec<_> = (0..=6).map(|n| aw_e_plus(n, p)).collect::<Result<_>>()?;
        let et: Vec<_> = (0..=6).map(|n| aw_e_plus(n, &pt)).collect::<Result<_>>()?;
        for n in 0..=6i64 {
            for m in 0..=6i64 {
                let x = p.a.inv()? * &q.powi(-m)?;
                let y = pt.a.inv()? * &q.powi(-n)?;
                acc.scalar(&ep[n as usize].eval(&x)?, &et[m as usize].eval(&y)?);
            }
        }
        Ok(())
    });
    acc.finish()
}

/// Identities of the non-symmetric polynomials (no square roots needed).
pub fn nonsym_checks<S: Field>(p: &ParamSet<S>, tol: f64) -> Vec<Check> {
    let t = eq_tol::<S>(tol);
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let o = q.one_like();
    let mut out = Vec::new();

    let mut acc = Acc::new(
        "nonsym-poly/Y-eigen",
        "Y P_-n = q^-n P_-n and Y P_n = q^(n-1) abcd P_n, |n| <= 8; P_0 = 1",
        t,
    );
    acc.run(|acc| {
        let y = y_explicit(p)?;
        for n in -8..=8i64 {
            let pn = aw_nonsym(n, p, NsRoute::Ab, false)?;
            let ev = if n <= 0 { q.powi(n)? } else { q.powi(n - 1)? * &p.abcd() };
            let ev = if n == 0 { p.dual_radicand()? } else { ev };
            if n == 0 {
                acc.poly(&pn, &LaurentPoly::constant(o.clone()));
            }
            acc.poly(&y.apply_laurent(&pn)?, &pn.scale(&ev));
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new(
        "nonsym-poly/normalization-constants",
        "P_-n = ab/(ab-1) (ab,ac,ad;q)_n/((q^(n-1)abcd;q)_n a^n) E_-n, P_n = (qab,ac,ad;q)_n/((q^n abcd;q)_n a^n) E_n, |n| <= 8",
        t,
    );
    acc.run(|acc| {
        for n in -8..=8i64 {
            let pn = aw_nonsym(n, p, NsRoute::Ab, false)?;
            let en = aw_nonsym(n, p, NsRoute::Ab, true)?;
            acc.poly(&pn, &en.scale(&nonsym_constant(n, p)?));
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new(
        "nonsym-poly/closed-form",
        "E_-n = E_n^+ - (1-q^n ab)(1-q^(n-1)abcd) E_n^- / (q^(n-1) b (1-ab)(1-qab)(1-ac)(1-ad)), E_n = E_n^+ - a(1-q^n)(1-q^(n-1)cd) E_n^- / (q^(n-1)(1-ab)(1-qab)(1-ac)(1-ad)), |n| <= 8",
        t,
    );
    acc.run(|acc| {
        for n in -8..=8i64 {
            acc.poly(&aw_nonsym_e_closed(n, p)?, &aw_nonsym(n, p, NsRoute::Ab, true)?);
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new(
        "nonsym-poly/ab-symmetry",
        "E_(+-n)(z;b,a,c,d) = (b/a)^n (ac,ad;q)_n/(bc,bd;q)_n E_(+-n)(z;a,b,c,d), n <= 6",
        t,
    );
    acc.run(|acc| {
        let swapped = ParamSet::raw(b.clone(), a.clone(), c.clone(), d.clone(), q.clone());
        for m in 0..=6i64 {
            let k = (b.clone() / a).powi(m)? * &qpoch_multi(&[a.clone() * c, a.clone() * d], q, m)?
                / qpoch_multi(&[b.clone() * c, b.clone() * d], q, m)?;
            for n in [-m, m] {
                let lhs = aw_nonsym(n, &swapped, NsRoute::Ab, true)?;
                acc.poly(&lhs, &aw_nonsym(n, p, NsRoute::Ab, true)?.scale(&k));
            }
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new("nonsym-poly/cd-symmetry", "E_n(z;a,b,c,d) = E_n(z;a,b,d,c), |n| <= 6", t);
    acc.run(|acc| {
        let swapped = ParamSet::raw(a.clone(), b.clone(), d.clone(), c.clone(), q.clone());
        for n in -6..=6i64 {
            acc.poly(&aw_nonsym(n, &swapped, NsRoute::Ab, true)?, &aw_nonsym(n, p, NsRoute::Ab, true)?);
        }
        Ok(())
    });
    out.push(acc.finish());

    let mut acc = Acc::new(
        "nonsym-poly/t1-decomposition",
        "E_n = g1 - z^-1 (1-az)(1-bz) g2 with g1 = (T1 E_n + E_n)/(1-ab) and g2 symmetric, |n| <= 4",
        t,
    );
    acc.run(|acc| {
        let w = antisym_factor(a, b);
        let t1op = t1(p)?;
        let ab = a.clone() * b;
        for n in -4..=4i64 {
            let e = aw_nonsym(n, p, NsRoute::Ab, true)?;
            let (g1, g2) = crate::daha::spherical::t1_decompose(&e, p)?;
            let (g1, g2) = (g1.to_laurent(), g2.to_laurent());
            acc.poly(&g1.sub(&w.mul(&g2)), &e);
            acc.poly(&t1op.apply_laurent(&g1)?, &g1.scale(&(-ab.clone())));
            acc.poly(&g2.invol(), &g2);
        }
        Ok(())
    });
    out.push(acc.finish());
    out
}

/// `P_n` from `(P_n^+, P_n^-)` equals `P_n` from `(P_n^+, P_n^{dagger -})`.
pub fn nonsym_route_check<S: Field>(p: &ParamSet<S>, tol: f64) -> Check {
    let t = eq_tol::<S>(tol);
    let mut acc = Acc::new(
        "nonsym-poly/route-equality",
        "ab/(ab-1)(P_n^+ - P_n^-) = (P_n^+ - P_n^(dagger-))/(1 - q^(n-1)cd) and the matching pair for P_n, 1 <= n <= 6",
        t,
    );
    acc.run(|acc| {
        for m in 1..=6i64 {
            for n in [-m, m] {
                acc.poly(
                    &aw_nonsym(n, p, NsRoute::Ab, false)?,
                    &aw_nonsym(n, p, NsRoute::Dagger, false)?,
                );
            }
        }
        Ok(())
    });
    acc.finish()
}

/// `E_n(z_a(m)^{-1}; p) = E_m(z_ã(n)^{-1}; p̃)` for `|m|, |n| <= 5`.
pub fn nonsym_duality_check<S: Field>(p: &ParamSet<S>, tol: f64) -> Check {
    let t = eq_tol::<S>(tol);
    let mut acc = Acc::new(
        "nonsym-poly/duality",
        "E_n(z_a(m)^-1; a,b,c,d) = E_m(z_at(n)^-1; at,bt,ct,dt), z_e(n) = e q^n, z_e(-n) = e^-1 q^-n, |m|, |n| <= 5",
        t,
    );
    acc.run(|acc| {
        let pt = p.dual()?;
        let q = &p.q;
        let ep: Vec<_> = (-5..=5).map(|n| aw_nonsym(n, p, NsRoute::Ab, true)).collect::<Result<_>>()?;
        let et: Vec<_> = (-5..=5).map(|n| aw_nonsym(n, &pt, NsRoute::Ab, true)).collect::<Result<_>>()?;
        for n in -5..=5i64 {
            for m in -5..=5i64 {
                let x = spectral_point(&p.a, m, q)?.inv()?;
                let y = spectral_point(&pt.a, n, q)?.inv()?;
                acc.scalar(&ep[(n + 5) as usize].eval(&x)?, &et[(m + 5) as usize].eval(&y)?);
            }
        }
        Ok(())
    });
    acc.finish()
}

/// `(1 - xz)` as a Laurent polynomial.
pub fn linear_factor<S: Field>(x: &S) -> LaurentPoly<S> {
    lin(x.one_like(), -x.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{exact_generic, exact_square};
    use crate::scalar::{rat, Rational};

    fn params(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64), q: (i64, i64)) -> ParamSet<Rational> {
        ParamSet::raw(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1), rat(d.0, d.1), rat(q.0, q.1))
    }

    #[test]
    fn e_plus_degree_one_by_hand() {
        // E_1^+ = 1 + (1 - q^{-1})(1 - abcd) q / ((1-ab)(1-ac)(1-ad)(1-q)) (az, a/z; q)_1
        let p = params((1, 2), (1, 3), (2, 5), (3, 7), (1, 4));
        let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
        let o = rat(1, 1);
        let k = (o.clone() - q.inv().unwrap()) * (o.clone() - p.abcd()) * q
            / ((o.clone() - a * b) * (o.clone() - a * c) * (o.clone() - a * d) * (o.clone() - q));
        let expect = LaurentPoly::from_terms([
            (0, o.clone() + &k * (o.clone() + a * a)),
            (1, -(k.clone() * a)),
            (-1, -(k * a)),
        ]);
        assert_eq!(aw_e_plus(1, &p).unwrap(), expect);
        assert_eq!(aw_e_plus(0, &p).unwrap(), LaurentPoly::constant(o));
    }

    #[test]
    fn e_plus_point_matches_polynomial() {
        let p = exact_generic(2, 0);
        let z = rat(5, 3);
        let cfg = SeriesConfig::default();
        for n in 0..6 {
            assert_eq!(aw_e_plus_at(n, &z, &p, &cfg).unwrap(), aw_e_plus(n, &p).unwrap().eval(&z).unwrap());
        }
    }

    #[test]
    fn nonsym_point_matches_polynomial() {
        let p = exact_generic(2, 1);
        let z = rat(-4, 7);
        let cfg = SeriesConfig::default();
        for n in -4..=4 {
            let poly = aw_nonsym(n, &p, NsRoute::Ab, true).unwrap();
            assert_eq!(aw_nonsym_e_at(n, &z, &p, &cfg).unwrap(), poly.eval(&z).unwrap());
        }
    }

    #[test]
    fn pole_reported() {
        // ab = 1/q^0 at k = 0: (ab; q)_1 = 0
        let p = params((2, 1), (1, 2), (1, 3), (1, 5), (1, 3));
        assert!(matches!(aw_e_plus(2, &p), Err(Error::PoleInDenominator(_))));
    }

    #[test]
    fn antisym_vanishes_at_inverse_a() {
        let p = exact_generic(4, 2);
        for n in 1..5 {
            let pm = aw_antisym(n, &p, Antisym::PMinus).unwrap();
            assert!(pm.eval(&p.a.inv().unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn all_checks_pass_on_square_tuple() {
        let p = exact_square(11, 0);
        let mut all = symmetric_checks(&p, 0.0);
        all.extend(half_shift_checks(&p, 0.0));
        all.push(duality_check(&p, 0.0));
        all.extend(nonsym_checks(&p, 0.0));
        all.push(nonsym_route_check(&p, 0.0));
        all.push(nonsym_duality_check(&p, 0.0));
        for c in &all {
            assert!(c.pass, "{} {} residual {}", c.id, c.anchor, c.residual);
        }
    }
}
