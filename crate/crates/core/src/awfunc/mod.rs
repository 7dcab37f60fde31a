//! Askey-Wilson functions: the symmetric function `E^+(gamma; z)` through four
//! independent representations, its normalization variants, the
//! non-symmetric function `E(gamma; z)`, the function `F(gamma; z)` built from
//! half-shifted parameters, and the inverse Gaussian expansion.
//!
//! Everything here is numeric (`Cx`); kernel coefficients and weights are
//! generic over [`Field`] and live in [`weights`].

pub mod checks;
pub mod weights;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::awpoly::{aw_e_plus_at, aw_nonsym_e_at};
use crate::error::{Error, Result};
use crate::params::ParamSet;
use crate::qkernels::{bhs, qpoch_inf_multi, qpoch_inf_ratio, w87, wvp, Estimate, SeriesConfig};
use crate::sampling::{numeric_generic, numeric_point, rng_for, NumericRanges};
use crate::scalar::{Cx, Field};

pub use weights::{assembled_weight, kernel_coefficient, nonsym_kernel_pair, WeightBreakdown};

/// Representation used to evaluate `E^+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    /// Prefactor times a very-well-poised `8W7`.
    W87,
    /// Sum of two balanced `4phi3` series.
    Sum4phi3,
    /// `R(gamma; z; a,b,c,d)` plus a multiple of `R(gamma; z; q/d,b,c,q/a)`.
    Suslov,
    /// Expansion in products of polynomials in `z` and `gamma`.
    Kernel,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::W87, Method::Sum4phi3, Method::Suslov, Method::Kernel];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::W87 => "w87",
            Method::Sum4phi3 => "sum4phi3",
            Method::Suslov => "suslov",
            Method::Kernel => "kernel",
        }
    }

    pub fn parse(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownName(format!("method {s}")))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Representation used to evaluate the non-symmetric function `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NsMethod {
    /// Expansion in products of non-symmetric polynomials.
    Kernel,
    /// `E^+(gamma; z; a,b,c,d)` minus a multiple of `E^+(gamma; z; qa,qb,c,d)`,
    /// both evaluated with the given method.
    Decomp(Method),
}

impl NsMethod {
    pub fn parse(s: &str) -> Result<NsMethod> {
        let s = s.to_ascii_lowercase();
        match s.as_str() {
            "ns-kernel" | "kernel" => Ok(NsMethod::Kernel),
            "ns-decomp" | "decomp" => Ok(NsMethod::Decomp(Method::Kernel)),
            _ => match s.strip_prefix("ns-decomp:").or_else(|| s.strip_prefix("decomp:")) {
                Some(m) => Ok(NsMethod::Decomp(Method::parse(m)?)),
                None => Err(Error::UnknownName(format!("non-symmetric method {s}"))),
            },
        }
    }
}

impl fmt::Display for NsMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NsMethod::Kernel => f.write_str("ns-kernel"),
            NsMethod::Decomp(m) => write!(f, "ns-decomp:{m}"),
        }
    }
}

/// Normalization of the symmetric function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// `E^+`, equal to 1 at `z = a`.
    Plus,
    /// `phi_gamma = E^+ / (bc, qa/d, q/(ad); q)_inf`.
    Phi,
    /// `phi^S = (qabc/d; q)_inf / (qb/d, qc/d; q)_inf phi_gamma`.
    Stokman,
}

impl Normalization {
    pub fn parse(s: &str) -> Result<Normalization> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "plus" | "e+" => Normalization::Plus,
            "phi" => Normalization::Phi,
            "stokman" | "phi-s" => Normalization::Stokman,
            _ => return Err(Error::UnknownName(format!("normalization {s}"))),
        })
    }
}

fn one(q: &Cx) -> Cx {
    q.one_like()
}

/// Parameter tuple with every entry extended to `bits` of precision.
fn lifted(p: &ParamSet<Cx>, bits: u32) -> ParamSet<Cx> {
    p.convert(|x| x.with_precision(bits))
}

/// `(a, b, c, q/d)`.
fn tau(p: &ParamSet<Cx>) -> ParamSet<Cx> {
    ParamSet::raw(p.a.clone(), p.b.clone(), p.c.clone(), p.q.clone() / &p.d, p.q.clone())
}

fn scaled(p: &ParamSet<Cx>, f: [&Cx; 4]) -> ParamSet<Cx> {
    ParamSet::raw(
        p.a.clone() * f[0],
        p.b.clone() * f[1],
        p.c.clone() * f[2],
        p.d.clone() * f[3],
        p.q.clone(),
    )
}

/// `(qa, qb, c, d)`.
pub fn raised_ab(p: &ParamSet<Cx>) -> ParamSet<Cx> {
    let o = one(&p.q);
    scaled(p, [&p.q, &p.q, &o, &o])
}

/// `(q^{1/2}a, q^{1/2}b, q^{1/2}c, q^{1/2}d)`.
pub fn half_raised(p: &ParamSet<Cx>) -> Result<ParamSet<Cx>> {
    let s = p.q.sqrt()?;
    Ok(scaled(p, [&s, &s, &s, &s]))
}

fn ensure_nonzero(x: &Cx, what: &str) -> Result<()> {
    if x.abs_f64() == 0.0 || !x.is_finite() {
        return Err(Error::OutOfDomain(format!("{what} = {x}")));
    }
    Ok(())
}

/// Validity predicate of each method at `(gamma, z, p)`.
pub fn method_domain(method: Method, gamma: &Cx, z: &Cx, p: &ParamSet<Cx>, cfg: &SeriesConfig) -> Result<()> {
    ensure_nonzero(gamma, "gamma")?;
    ensure_nonzero(z, "z")?;
    let t = p.dual()?;
    match method {
        Method::W87 => {
            let arg = p.q.clone() / (gamma.clone() * &t.d);
            if arg.abs_f64() >= 1.0 {
                return Err(Error::OutOfDomain(format!(
                    "8W7 argument q/(gamma d~) has modulus {} >= 1",
                    arg.abs_f64()
                )));
            }
        }
        Method::Suslov => {
            // the inner R uses the principal root of qbc/(ad); it has to be qa~/(ad)
            let inner = ParamSet::raw(
                p.q.clone() / &p.d,
                p.b.clone(),
                p.c.clone(),
                p.q.clone() / &p.a,
                p.q.clone(),
            );
            let principal = inner.dual_a()?;
            let expected = p.q.clone() * &t.a / (p.a.clone() * &p.d);
            if principal.rel_dist(&expected) > cfg.check_tol() {
                return Err(Error::OutOfDomain(
                    "principal root of qbc/(ad) differs from q a~/(ad)".into(),
                ));
            }
        }
        Method::Sum4phi3 | Method::Kernel => {}
    }
    Ok(())
}

/// `R(gamma; z; p) = 4phi3(az, a/z, a~ gamma, a~/gamma; ab, ac, ad; q, q)` with
/// `a~` the principal dual parameter of `p`.
pub fn aw_r(gamma: &Cx, z: &Cx, p: &ParamSet<Cx>, cfg: &SeriesConfig) -> Result<Estimate<Cx>> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let at = p.dual_a()?;
    let num = [
        a.clone() * z,
        a.clone() / z.clone(),
        at.clone() * gamma,
        at / gamma.clone(),
    ];
    bhs(&num, &[a.clone() * b, a.clone() * c, a.clone() * d], q, q, cfg)
}

fn eval_w87(gamma: &Cx, z: &Cx, p: &ParamSet<Cx>, cfg: &SeriesConfig) -> Result<Estimate<Cx>> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let at = p.dual_a()?;
    let g = gamma.clone();
    let zi = z.inv()?;
    let qga = q.clone() * &g * &at / d;
    let pre = qpoch_inf_ratio(
        &[
            qga.clone() * z,
            qga.clone() * &zi,
            q.clone() * a / d,
            q.clone() / (a.clone() * d),
        ],
        &[
            qga.clone() * a,
            g.clone() * b * c / &at,
            q.clone() * z / d,
            q.clone() * &zi / d,
        ],
        q,
        cfg,
    )?;
    let big_a = g.clone() * &at * a / d;
    let e = w87(
        &big_a,
        [
            &(a.clone() * z),
            &(a.clone() * &zi),
            &(g.clone() * &at),
            &(g.clone() * a * b / &at),
            &(g.clone() * a * c / &at),
        ],
        q,
        cfg,
    )?;
    Ok(Estimate {
        est_error: e.est_error * pre.abs_f64(),
        value: pre * &e.value,
    })
}

fn eval_sum4phi3(gamma: &Cx, z: &Cx, p: &ParamSet<Cx>, cfg: &SeriesConfig) -> Result<Estimate<Cx>> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let at = p.dual_a()?;
    let g = gamma.clone();
    let gi = g.inv()?;
    let zi = z.inv()?;
    // q / d~ = q a~ / (ad)
    let qdt = q.clone() * &at / (a.clone() * d);
    let first = bhs(
        &[a.clone() * z, a.clone() * &zi, at.clone() * &g, at.clone() * &gi],
        &[a.clone() * b, a.clone() * c, a.clone() * d],
        q,
        q,
        cfg,
    )?;
    let qd = q.clone() / d;
    let pre = qpoch_inf_ratio(
        &[
            a.clone() * z,
            a.clone() * &zi,
            at.clone() * &g,
            at.clone() * &gi,
            qd.clone() * b,
            qd.clone() * c,
            qd.clone() / a,
        ],
        &[
            qd.clone() * z,
            qd.clone() * &zi,
            qdt.clone() * &g,
            qdt.clone() * &gi,
            a.clone() * b,
            a.clone() * c,
            a.clone() * d / q,
        ],
        q,
        cfg,
    )?;
    let second = bhs(
        &[qd.clone() * z, qd.clone() * &zi, qdt.clone() * &g, qdt * &gi],
        &[qd.clone() * b, qd.clone() * c, qd.clone() * q / a],
        q,
        q,
        cfg,
    )?;
    Ok(Estimate {
        est_error: first.est_error + pre.abs_f64() * second.est_error,
        value: first.value + pre * &second.value,
    })
}

fn eval_suslov(gamma: &Cx, z: &Cx, p: &ParamSet<Cx>, cfg: &SeriesConfig) -> Result<Estimate<Cx>> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let at = p.dual_a()?;
    let g = gamma.clone();
    let gi = g.inv()?;
    let zi = z.inv()?;
    let qd = q.clone() / d;
    let qad = q.clone() / (a.clone() * d);
    let first = aw_r(gamma, z, p, cfg)?;
    let spectral = qpoch_inf_ratio(
        &[
            at.clone() * &g,
            at.clone() * &gi,
            qd.clone() * b,
            qd.clone() * c,
            qad.clone(),
        ],
        &[
            qad.clone() * &at * &g,
            qad.clone() * &at * &gi,
            a.clone() * b,
            a.clone() * c,
            a.clone() * d / q,
        ],
        q,
        cfg,
    )?;
    let geometric = qpoch_inf_ratio(
        &[a.clone() * z, a.clone() * &zi],
        &[qd.clone() * z, qd.clone() * &zi],
        q,
        cfg,
    )?;
    let inner = ParamSet::raw(qd, b.clone(), c.clone(), q.clone() / a, q.clone());
    // the second term needs a~' = q a~/(ad); R only sees a~' gamma and a~'/gamma,
    // so the other root is compensated by -gamma
    let wanted = q.clone() * &at / (a.clone() * d);
    let g2 = if inner.dual_a()?.rel_dist(&wanted) > 0.5 { -g } else { g };
    let second = aw_r(&g2, z, &inner, cfg)?;
    let k = spectral * &geometric;
    Ok(Estimate {
        est_error: first.est_error + k.abs_f64() * second.est_error,
        value: first.value + k * &second.value,
    })
}

/// `(bc, qa/d, qb/d, qc/d, q/(ad); q)_inf / ((qabc/d; q)_inf
/// (qz/d, q/(dz), q gamma/d~, q/(gamma d~); q)_inf)`.
fn kernel_prefactor(gamma: &Cx, z: &Cx, p: &ParamSet<Cx>, cfg: &SeriesConfig) -> Result<Cx> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let at = p.dual_a()?;
    let qd = q.clone() / d;
    let qdt = q.clone() * &at / (a.clone() * d);
    let zi = z.inv()?;
    let gi = gamma.inv()?;
    qpoch_inf_ratio(
        &[
            b.clone() * c,
            qd.clone() * a,
            qd.clone() * b,
            qd.clone() * c,
            qd.clone() / a,
        ],
        &[
            qd.clone() * a * b * c,
            qd.clone() * z,
            qd.clone() * &zi,
            qdt.clone() * gamma,
            qdt * &gi,
        ],
        q,
        cfg,
    )
}

/// Sums `sum_m term(m)` for rapidly decaying terms. Returns the sum, the
/// largest term modulus and the first negligible term modulus.
fn sum_decaying(mut term: impl FnMut(usize) -> Result<Cx>, like: &Cx, cfg: &SeriesConfig) -> Result<(Cx, f64, f64)> {
    let mut sum = like.zero_like();
    let mut peak = 0f64;
    let mut small = 0usize;
    for m in 0..cfg.max_terms {
        let t = term(m)?;
        let ta = t.abs_f64();
        peak = peak.max(ta);
        sum = sum + &t;
        if ta <= cfg.rel_tol * sum.abs_f64() {
            small += 1;
            if small >= cfg.tail_guard && m >= 4 {
                return Ok((sum, peak, ta));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence(cfg.max_terms))
}

/// Runs a sum at raised precision, adding bits until the largest term is
/// within the working precision of the result.
fn with_cancellation_guard(
    base: u32,
    mut run: impl FnMut(u32) -> Result<(Cx, f64, f64)>,
) -> Result<Estimate<Cx>> {
    let mut bits = base + 32;
    for _ in 0..4 {
        let (s, peak, tail) = run(bits)?;
        let lost = if s.abs_f64() > 0.0 { (peak / s.abs_f64()).log2().max(0.0) } else { 0.0 };
        if lost + 16.0 <= (bits - base) as f64 {
            return Ok(Estimate {
                value: s.with_precision(base),
                est_error: tail,
            });
        }
        bits = base + lost.ceil() as u32 + 32;
    }
    Err(Error::PrecisionTooLow("kernel sum keeps cancelling".into()))
}

fn eval_kernel(gamma: &Cx, z: &Cx, p: &ParamSet<Cx>, cfg: &SeriesConfig) -> Result<Estimate<Cx>> {
    let base = p.q.precision();
    let pre = kernel_prefactor(gamma, z, p, cfg)?;
    let sum = with_cancellation_guard(base, |bits| {
        let p = lifted(p, bits);
        let (z, g) = (z.with_precision(bits), gamma.with_precision(bits));
        let pz = tau(&p);
        let pg = tau(&p.dual()?);
        sum_decaying(
            |m| {
                let k: Cx = kernel_coefficient(m, &p)?;
                Ok(k * &aw_e_plus_at(m, &z, &pz, cfg)? * &aw_e_plus_at(m, &g, &pg, cfg)?)
            },
            &p.q,
            cfg,
        )
    })?;
    Ok(Estimate {
        est_error: sum.est_error * pre.abs_f64(),
        value: pre * &sum.value,
    })
}

/// `E^+(gamma; z; p)` with an estimated absolute error.
pub fn aw_function_est(
    gamma: &Cx,
    z: &Cx,
    p: &ParamSet<Cx>,
    method: Method,
    cfg: &SeriesConfig,
) -> Result<Estimate<Cx>> {
    method_domain(method, gamma, z, p, cfg)?;
    match method {
        Method::W87 => eval_w87(gamma, z, p, cfg),
        Method::Sum4phi3 => eval_sum4phi3(gamma, z, p, cfg),
        Method::Suslov => eval_suslov(gamma, z, p, cfg),
        Method::Kernel => eval_kernel(gamma, z, p, cfg),
    }
}

/// `E^+(gamma; z; p)`.
pub fn aw_function(gamma: &Cx, z: &Cx, p: &ParamSet<Cx>, method: Method, cfg: &SeriesConfig) -> Result<Cx> {
    Ok(aw_function_est(gamma, z, p, method, cfg)?.value)
}

/// Factor `s` with `variant = s E^+`.
pub fn normalization_factor(p: &ParamSet<Cx>, norm: Normalization, cfg: &SeriesConfig) -> Result<Cx> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let qd = q.clone() / d;
    if norm == Normalization::Plus {
        return Ok(one(q));
    }
    let phi = qpoch_inf_ratio(&[], &[b.clone() * c, qd.clone() * a, qd.clone() / a], q, cfg)?;
    Ok(match norm {
        Normalization::Phi => phi,
        _ => phi * &qpoch_inf_ratio(&[qd.clone() * a * b * c], &[qd.clone() * b, qd * c], q, cfg)?,
    })
}

/// `E^+`, `phi_gamma` or `phi^S` at `(gamma, z)`.
pub fn aw_function_normalized(
    gamma: &Cx,
    z: &Cx,
    p: &ParamSet<Cx>,
    method: Method,
    norm: Normalization,
    cfg: &SeriesConfig,
) -> Result<Cx> {
    Ok(aw_function(gamma, z, p, method, cfg)? * &normalization_factor(p, norm, cfg)?)
}

fn eval_ns_kernel(gamma: &Cx, z: &Cx, p: &ParamSet<Cx>, cfg: &SeriesConfig) -> Result<Estimate<Cx>> {
    let base = p.q.precision();
    let pre = kernel_prefactor(gamma, z, p, cfg)?;
    let sum = with_cancellation_guard(base, |bits| {
        let p = lifted(p, bits);
        let (z, g) = (z.with_precision(bits), gamma.with_precision(bits));
        let pz = tau(&p);
        let pg = tau(&p.dual()?);
        sum_decaying(
            |m| {
                let (minus, plus): (Cx, Cx) = nonsym_kernel_pair(m, &p)?;
                let mi = m as i64;
                let mut t = plus * &aw_nonsym_e_at(mi, &z, &pz, cfg)? * &aw_nonsym_e_at(mi, &g, &pg, cfg)?;
                if m > 0 {
                    t = t + minus * &aw_nonsym_e_at(-mi, &z, &pz, cfg)? * &aw_nonsym_e_at(-mi, &g, &pg, cfg)?;
                }
                Ok(t)
            },
            &p.q,
            cfg,
        )
    })?;
    Ok(Estimate {
        est_error: sum.est_error * pre.abs_f64(),
        value: pre * &sum.value,
    })
}

/// Coefficient `sqrt(qcd a/b) = q a~ / b` of the anti-symmetric part of `E`.
pub fn decomposition_coefficient(p: &ParamSet<Cx>) -> Result<Cx> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let den = (one(q) - a.clone() * b)
        * &(one(q) - q.clone() * a * b)
        * &(one(q) - a.clone() * c)
        * &(one(q) - a.clone() * d);
    ensure_nonzero(&den, "(1-ab)(1-qab)(1-ac)(1-ad)")?;
    Ok(q.clone() * &p.dual_a()? / b.clone() / den)
}

fn eval_ns_decomp(gamma: &Cx, z: &Cx, p: &ParamSet<Cx>, inner: Method, cfg: &SeriesConfig) -> Result<Estimate<Cx>> {
    let t = p.dual()?;
    let o = one(&p.q);
    let sym = aw_function_est(gamma, z, p, inner, cfg)?;
    let raised = aw_function_est(gamma, z, &raised_ab(p), inner, cfg)?;
    let gfac = (o.clone() - t.a.clone() * gamma) * &(o.clone() - t.b.clone() * gamma) / gamma.clone();
    let zfac = (o.clone() - p.a.clone() * z) * &(o.clone() - p.b.clone() * z) / z.clone();
    let k = decomposition_coefficient(p)? * &gfac * &zfac;
    Ok(Estimate {
        est_error: sym.est_error + k.abs_f64() * raised.est_error,
        value: sym.value - k * &raised.value,
    })
}

/// Non-symmetric `E(gamma; z; p)` with an estimated absolute error.
pub fn nonsym_aw_function_est(
    gamma: &Cx,
    z: &Cx,
    p: &ParamSet<Cx>,
    method: NsMethod,
    cfg: &SeriesConfig,
) -> Result<Estimate<Cx>> {
    ensure_nonzero(gamma, "gamma")?;
    ensure_nonzero(z, "z")?;
    match method {
        NsMethod::Kernel => eval_ns_kernel(gamma, z, p, cfg),
        NsMethod::Decomp(m) => eval_ns_decomp(gamma, z, p, m, cfg),
    }
}

/// Non-symmetric `E(gamma; z; p)`.
pub fn nonsym_aw_function(gamma: &Cx, z: &Cx, p: &ParamSet<Cx>, method: NsMethod, cfg: &SeriesConfig) -> Result<Cx> {
    Ok(nonsym_aw_function_est(gamma, z, p, method, cfg)?.value)
}

/// `F(gamma; z) = E^+(gamma; z; p) - a(1 - a~ gamma)/((1-ab)(1-ac)(1-ad))
/// z^{-1}(c-z)(d-z) E^+(gamma; q^{-1/2}z; q^{1/2}p)`.
pub fn f_function(gamma: &Cx, z: &Cx, p: &ParamSet<Cx>, method: Method, cfg: &SeriesConfig) -> Result<Cx> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let o = one(q);
    let at = p.dual_a()?;
    let den = (o.clone() - a.clone() * b) * &(o.clone() - a.clone() * c) * &(o.clone() - a.clone() * d);
    ensure_nonzero(&den, "(1-ab)(1-ac)(1-ad)")?;
    let k = a.clone() * &(o.clone() - at * gamma) / den;
    let w = (c.clone() - z) * &(d.clone() - z) / z.clone();
    let s = q.sqrt()?;
    let shifted = aw_function(gamma, &(z.clone() / s), &half_raised(p)?, method, cfg)?;
    Ok(aw_function(gamma, z, p, method, cfg)? - k * &w * &shifted)
}

/// Partial sum `M` of the expansion of `(dz, d/z; q)_inf` in `E_m^+(z; p)`:
/// `(ad, bd, cd; q)_inf / (abcd; q)_inf sum_{m < M} (-d/a)^m q^{m(m-1)/2}
/// (1 - q^{2m-1}abcd)/(1 - abcd/q) (abcd/q, ab, ac; q)_m / (bd, cd, q; q)_m E_m^+(z)`.
pub fn inverse_gaussian_expansion(z: &Cx, p: &ParamSet<Cx>, terms: usize, cfg: &SeriesConfig) -> Result<Cx> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let base = q.precision();
    let pre = qpoch_inf_ratio(&[a.clone() * d, b.clone() * d, c.clone() * d], &[p.abcd()], q, cfg)?;
    let s = with_cancellation_guard(base, |bits| {
        let p = lifted(p, bits);
        let z = z.with_precision(bits);
        let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
        let o = one(q);
        let r = p.abcd() / q.clone();
        // (1 - q^{2m-1}abcd)(abcd/q; q)_m / (1 - abcd/q) = (1 - q^{2m-1}abcd)(abcd; q)_{m-1}
        let mut lead = o.clone();
        let mut coef = o.clone();
        let mut sum = o.zero_like();
        let mut peak = 0f64;
        let mut last = 0f64;
        let mut qm = o.clone();
        for m in 0..terms {
            let mi = m as i64;
            let w = if m == 0 {
                o.clone()
            } else {
                let w = lead.clone() * &(o.clone() - q.powi(2 * mi - 1)? * &p.abcd());
                lead = lead * &(o.clone() - r.clone() * &qm);
                w
            };
            let t = coef.clone() * &w * &aw_e_plus_at(m, &z, &p, cfg)?;
            peak = peak.max(t.abs_f64());
            last = t.abs_f64();
            sum = sum + &t;
            // (-d/a) q^m (ab q^m)(ac q^m) / ((bd q^m)(cd q^m)(q^{m+1}))
            let num = -(d.clone() / a)
                * &qm
                * &(o.clone() - a.clone() * b * &qm)
                * &(o.clone() - a.clone() * c * &qm);
            let den = (o.clone() - b.clone() * d * &qm)
                * &(o.clone() - c.clone() * d * &qm)
                * &(o.clone() - qm.clone() * q);
            ensure_nonzero(&den, "(bd, cd, q; q)_m")?;
            coef = coef * &num / den;
            qm = qm * q;
        }
        Ok((sum, peak, last))
    })?;
    Ok(pre * &s.value)
}

/// `(abcz, abc/z, qa/d, q/(ad); q)_inf / (a^2bc, bc, qz/d, q/(dz); q)_inf
/// 6W5(a^2bc/q; az, a/z, abcd/q; q, q/(ad))`, which equals 1.
pub fn evaluation_6w5(z: &Cx, p: &ParamSet<Cx>, cfg: &SeriesConfig) -> Result<Cx> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let zi = z.inv()?;
    let abc = a.clone() * b * c;
    let qd = q.clone() / d;
    let pre = qpoch_inf_ratio(
        &[abc.clone() * z, abc.clone() * &zi, qd.clone() * a, qd.clone() / a],
        &[abc.clone() * a, b.clone() * c, qd.clone() * z, qd.clone() * &zi],
        q,
        cfg,
    )?;
    let s = wvp(
        &(abc.clone() * a / q.clone()),
        &[a.clone() * z, a.clone() * &zi, p.abcd() / q.clone()],
        q,
        &(qd / a),
        cfg,
    )?;
    Ok(pre * &s.value)
}

/// `(dz, d/z; q)_inf` by direct products.
pub fn inverse_gaussian_direct(z: &Cx, d: &Cx, q: &Cx, cfg: &SeriesConfig) -> Result<Cx> {
    qpoch_inf_multi(&[d.clone() * z, d.clone() / z.clone()], q, cfg)
}

/// A point `(gamma, z, p)` at which all four methods for `E^+` are valid and
/// no prefactor comes close to a pole.
#[derive(Clone, Debug)]
pub struct AdmissiblePoint {
    pub gamma: Cx,
    pub z: Cx,
    pub p: ParamSet<Cx>,
}

/// Ranges of the admissible sampler.
pub fn admissible_ranges() -> NumericRanges {
    NumericRanges {
        modulus: (0.3, 3.0),
        max_arg: 0.3,
        q: (0.2, 0.6),
    }
}

/// Smallest `|1 - x q^k|` over `0 <= k < 40`, relative to 1.
fn lattice_distance(x: &Cx, q: &Cx) -> f64 {
    let mut xq = x.clone();
    let mut best = f64::INFINITY;
    for _ in 0..40 {
        best = best.min((one(q) - &xq).abs_f64());
        xq = xq * q;
    }
    best
}

fn admissible_at(p: &ParamSet<Cx>, gamma: Cx, z: Cx, cfg: &SeriesConfig) -> Result<Option<AdmissiblePoint>> {
    let t = p.dual()?;
    let arg = p.q.clone() / (gamma.clone() * &t.d);
    if arg.abs_f64() > 0.8 {
        return Ok(None);
    }
    let qd = p.q.clone() / &p.d;
    let qdt = p.q.clone() / &t.d;
    let poles = [
        qd.clone() * &z,
        qd.clone() / z.clone(),
        qdt.clone() * &gamma,
        qdt / gamma.clone(),
        qd.clone() * &p.a * &p.b * &p.c,
        p.a.clone() * &p.d / p.q.clone(),
        p.a.clone() * &t.a * &gamma / &p.d * &p.q,
        gamma.clone() * &p.b * &p.c / &t.a,
    ];
    if poles.iter().any(|x| lattice_distance(x, &p.q) < 1e-2) {
        return Ok(None);
    }
    if Method::ALL.iter().all(|m| method_domain(*m, &gamma, &z, p, cfg).is_ok()) {
        return Ok(Some(AdmissiblePoint { gamma, z, p: p.clone() }));
    }
    Ok(None)
}

/// Seeded admissible sample for cross-method comparisons.
pub fn admissible_sample(seed: u64, index: u64, cfg: &SeriesConfig) -> Result<AdmissiblePoint> {
    let prec = cfg.prec();
    for attempt in 0..200u64 {
        let p = numeric_generic(seed, index * 1000 + attempt, prec, admissible_ranges());
        let mut rng = rng_for(seed ^ 0x05ee_da11, index * 1000 + attempt);
        let gamma = numeric_point(&mut rng, prec, 0.4, 2.5);
        let z = numeric_point(&mut rng, prec, 0.4, 2.5);
        if let Some(pt) = admissible_at(&p, gamma, z, cfg)? {
            return Ok(pt);
        }
    }
    Err(Error::DegenerateParams("no admissible point found".into()))
}

/// Seeded admissible `(gamma, z)` for a fixed tuple.
pub fn admissible_point_for(p: &ParamSet<Cx>, seed: u64, index: u64, cfg: &SeriesConfig) -> Result<AdmissiblePoint> {
    let prec = cfg.prec();
    let p = p.convert(|x| x.with_precision(prec));
    for attempt in 0..500u64 {
        let mut rng = rng_for(seed ^ 0x05ee_da11, index * 1000 + attempt);
        let gamma = numeric_point(&mut rng, prec, 0.4, 2.5);
        let z = numeric_point(&mut rng, prec, 0.4, 2.5);
        if let Some(pt) = admissible_at(&p, gamma, z, cfg)? {
            return Ok(pt);
        }
    }
    Err(Error::DegenerateParams(format!("no admissible (gamma, z) for {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_agree_at_a_sample() {
        let cfg = SeriesConfig::default();
        let s = admissible_sample(1, 0, &cfg).unwrap();
        let vals: Vec<Cx> = Method::ALL
            .iter()
            .map(|m| aw_function(&s.gamma, &s.z, &s.p, *m, &cfg).unwrap())
            .collect();
        for v in &vals[1..] {
            assert!(v.rel_dist(&vals[0]) < 1e-35, "{v} vs {}", vals[0]);
        }
    }

    #[test]
    fn normalization_at_z_equal_a() {
        let cfg = SeriesConfig::default();
        let s = admissible_sample(2, 0, &cfg).unwrap();
        let v = aw_function(&s.gamma, &s.p.a, &s.p, Method::Kernel, &cfg).unwrap();
        assert!(v.rel_dist(&one(&s.p.q)) < 1e-38, "{v}");
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(Method::parse(m.as_str()).unwrap(), m);
        }
        assert_eq!(NsMethod::parse("ns-decomp:w87").unwrap(), NsMethod::Decomp(Method::W87));
    }
}
