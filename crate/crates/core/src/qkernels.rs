//! q-Pochhammer symbols, basic hypergeometric series, very-well-poised series
//! and the Gaussian `G_e(z) = 1 / (e z, e/z; q)_inf`.
//!
//! Infinite objects are evaluated in the numeric backend only; finite
//! Pochhammer symbols and terminating series work over any [`Field`].

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Cx, Field};

/// Truncation controls for infinite products and series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    /// Working precision in significant decimal digits.
    pub digits: u32,
    /// Relative truncation tolerance.
    pub rel_tol: f64,
    /// Hard cap on the number of terms or factors.
    pub max_terms: usize,
    /// Number of consecutive negligible terms required before stopping.
    pub tail_guard: usize,
}

impl SeriesConfig {
    pub fn with_digits(digits: u32) -> SeriesConfig {
        SeriesConfig {
            digits,
            rel_tol: 10f64.powi(-(digits as i32) - 2),
            max_terms: 20_000,
            tail_guard: 3,
        }
    }

    /// Binary precision matching `digits`.
    pub fn prec(&self) -> u32 {
        crate::scalar::bits_for_digits(self.digits)
    }

    /// Threshold below which a denominator factor counts as a pole.
    pub fn pole_threshold(&self) -> f64 {
        10f64.powi(-(self.digits as i32) / 2)
    }

    /// Default tolerance for analytic identity checks, `10^-(digits - 10)`.
    pub fn check_tol(&self) -> f64 {
        10f64.powi(-(self.digits as i32 - 10))
    }
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig::with_digits(50)
    }
}

/// A value with an estimated absolute truncation error.
#[derive(Clone, Debug, PartialEq)]
pub struct Estimate<S> {
    pub value: S,
    pub est_error: f64,
}

/// `(x; q)_n` for any integer `n`; negative `n` uses `1 / (x q^n; q)_{-n}`.
pub fn qpoch<S: Field>(x: &S, q: &S, n: i64) -> Result<S> {
    if n >= 0 {
        let one = x.one_like();
        let mut acc = one.clone();
        let mut xq = x.clone();
        for _ in 0..n {
            acc = acc * &(one.clone() - &xq);
            xq = xq * q;
        }
        Ok(acc)
    } else {
        let shifted = x.clone() * &q.powi(n)?;
        let p = qpoch(&shifted, q, -n)?;
        if p.is_zero() {
            return Err(Error::DivisionByZero(format!("({x}; q)_{n}")));
        }
        p.inv()
    }
}

/// `(x1, ..., xk; q)_n`.
pub fn qpoch_multi<S: Field>(xs: &[S], q: &S, n: i64) -> Result<S> {
    let mut acc = q.one_like();
    for x in xs {
        acc = acc * &qpoch(x, q, n)?;
    }
    Ok(acc)
}

fn require_inside_unit_disc(q: &Cx) -> Result<()> {
    if q.abs_f64() >= 1.0 {
        return Err(Error::Divergence(format!("|q| = {} >= 1", q.abs_f64())));
    }
    Ok(())
}

/// `(x; q)_inf` with a tail bound. The product stops once the remaining
/// factors are provably within `rel_tol`:
/// `|log prod_{i >= j}(1 - x q^i)| <= |x q^j| / ((1 - |q|)(1 - |x q^j|))`.
pub fn qpoch_inf_est(x: &Cx, q: &Cx, cfg: &SeriesConfig) -> Result<Estimate<Cx>> {
    require_inside_unit_disc(q)?;
    let one = x.one_like();
    let aq = q.abs_f64();
    let mut acc = one.clone();
    let mut xq = x.clone();
    for j in 0..cfg.max_terms {
        let m = xq.abs_f64();
        if m < 0.5 {
            let bound = m / ((1.0 - aq) * (1.0 - m));
            if bound < cfg.rel_tol {
                let err = acc.abs_f64() * bound * 1.01;
                log::trace!("qpoch_inf: {j} factors, tail bound {bound:e}");
                return Ok(Estimate {
                    value: acc,
                    est_error: err,
                });
            }
        }
        acc = acc * &(one.clone() - &xq);
        xq = xq * q;
    }
    Err(Error::NonConvergence(cfg.max_terms))
}

pub fn qpoch_inf(x: &Cx, q: &Cx, cfg: &SeriesConfig) -> Result<Cx> {
    Ok(qpoch_inf_est(x, q, cfg)?.value)
}

/// `(x1, ..., xk; q)_inf`.
pub fn qpoch_inf_multi(xs: &[Cx], q: &Cx, cfg: &SeriesConfig) -> Result<Cx> {
    let mut acc = q.one_like();
    for x in xs {
        acc = acc * &qpoch_inf(x, q, cfg)?;
    }
    Ok(acc)
}

/// Euler function `(q; q)_inf`.
pub fn euler(q: &Cx, cfg: &SeriesConfig) -> Result<Cx> {
    qpoch_inf(q, q, cfg)
}

/// Ratio of infinite products `(num; q)_inf / (den; q)_inf`, failing on poles.
pub fn qpoch_inf_ratio(num: &[Cx], den: &[Cx], q: &Cx, cfg: &SeriesConfig) -> Result<Cx> {
    let n = qpoch_inf_multi(num, q, cfg)?;
    let mut d = q.one_like();
    for x in den {
        let v = qpoch_inf(x, q, cfg)?;
        if v.abs_f64() < cfg.pole_threshold() {
            return Err(Error::Pole(format!("({x}; q)_inf vanishes")));
        }
        d = d * &v;
    }
    Ok(n / d)
}

/// Gaussian `G_e(z) = 1 / (e z, e/z; q)_inf`.
pub fn gaussian(e: &Cx, z: &Cx, q: &Cx, cfg: &SeriesConfig) -> Result<Cx> {
    let zi = z.inv()?;
    qpoch_inf_ratio(&[], &[e.clone() * z, e.clone() * &zi], q, cfg)
}

/// Sums `sum_k t_k` given `t_0` and a term ratio `t_{k+1} / t_k = ratio(k)`.
///
/// Stops once `tail_guard` consecutive terms are below `rel_tol` relative to
/// the partial sum and the geometric tail bound built from the larger of the
/// observed ratio and `limit_ratio` is below `rel_tol` as well.  A ratio that
/// becomes exactly zero terminates the series.
pub fn sum_by_ratio<S: Field>(
    t0: S,
    mut ratio: impl FnMut(usize) -> Result<S>,
    limit_ratio: f64,
    terminating_at: Option<usize>,
    cfg: &SeriesConfig,
) -> Result<Estimate<S>> {
    let mut sum = t0.clone();
    let mut term = t0;
    let mut small_run = 0usize;
    let cap = terminating_at.map(|n| n + 1).unwrap_or(cfg.max_terms);
    for k in 0..cap {
        if Some(k) == terminating_at {
            break;
        }
        let r = ratio(k)?;
        if r.is_zero() {
            return Ok(Estimate {
                value: sum,
                est_error: 0.0,
            });
        }
        term = term * &r;
        sum = sum + &term;
        if terminating_at.is_some() || S::EXACT {
            continue;
        }
        let s_abs = sum.abs_f64();
        let t_abs = term.abs_f64();
        let rho = r.abs_f64().max(limit_ratio);
        if t_abs <= cfg.rel_tol * s_abs || t_abs == 0.0 {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= cfg.tail_guard && rho < 0.99 {
            let tail = t_abs * rho / (1.0 - rho);
            if tail <= cfg.rel_tol * s_abs.max(f64::MIN_POSITIVE) || t_abs == 0.0 {
                return Ok(Estimate {
                    value: sum,
                    est_error: tail,
                });
            }
        }
    }
    if terminating_at.is_some() || S::EXACT {
        return Ok(Estimate {
            value: sum,
            est_error: 0.0,
        });
    }
    Err(Error::NonConvergence(cfg.max_terms))
}

/// Smallest `n >= 0` (up to `nmax`) with `x q^n = 1`, if any. For `|q| != 1`
/// only the indices where `|x q^n|` is near 1 are tested.
fn termination_index<S: Field>(x: &S, q: &S, nmax: usize, tol: f64) -> Option<usize> {
    let one = x.one_like();
    let hits = |n: usize| -> bool {
        q.powi(n as i64)
            .map(|qn| (one.clone() - x.clone() * &qn).negligible(1.0, tol))
            .unwrap_or(false)
    };
    let (xa, qa) = (x.abs_f64(), q.abs_f64());
    if xa > 0.0 && xa.is_finite() && qa > 0.0 && (qa.ln()).abs() > 1e-6 {
        let est = -xa.ln() / qa.ln();
        if !est.is_finite() || est < -1.0 || est > nmax as f64 + 1.0 {
            return None;
        }
        let lo = (est.floor() as i64 - 1).max(0) as usize;
        let hi = ((est.ceil() as i64 + 1).max(0) as usize).min(nmax);
        return (lo..=hi).find(|&n| hits(n));
    }
    let mut xq = x.clone();
    for n in 0..=nmax {
        if (one.clone() - &xq).negligible(1.0, tol) {
            return Some(n);
        }
        xq = xq * q;
    }
    None
}

/// Basic hypergeometric series
/// `r phi s (num; den; q, arg) = sum_k (num; q)_k / (den, q; q)_k
/// [(-1)^k q^{k(k-1)/2}]^{1+s-r} arg^k`.
///
/// Terminating series (a numerator equal to `q^{-n}`) are summed exactly up to
/// `k = n`; they are the only series accepted by exact backends.
pub fn bhs<S: Field>(num: &[S], den: &[S], q: &S, arg: &S, cfg: &SeriesConfig) -> Result<Estimate<S>> {
    if S::EXACT {
        return bhs_inner(num, den, q, arg, cfg);
    }
    let peak = bhs_peak_log2(num, den, q, arg, cfg);
    with_guard_bits(peak, q, |lift| {
        let num: Vec<S> = num.iter().map(lift).collect();
        let den: Vec<S> = den.iter().map(lift).collect();
        bhs_inner(&num, &den, &lift(q), &lift(arg), cfg)
    })
}

/// Extra working bits that absorb the cancellation in the series `bhs`
/// would sum with these inputs. Callers whose inputs are built from shared
/// quantities (e.g. `q^-n` from `q`) should lift those quantities by this
/// much before forming the inputs.
pub fn bhs_guard_bits<S: Field>(num: &[S], den: &[S], q: &S, arg: &S, cfg: &SeriesConfig) -> u32 {
    if S::EXACT {
        return 0;
    }
    let peak = bhs_peak_log2(num, den, q, arg, cfg);
    if peak < 8.0 {
        0
    } else {
        peak.ceil() as u32 + 16
    }
}

fn bhs_peak_log2<S: Field>(num: &[S], den: &[S], q: &S, arg: &S, cfg: &SeriesConfig) -> f64 {
    let extra = 1 + den.len() as i32 - num.len() as i32;
    let (n64, d64, q64, a64) = (to64(num), to64(den), c64(q), c64(arg));
    let mut qk = Complex64::new(1.0, 0.0);
    peak_log2(cfg.max_terms, |_| {
        let mut r = a64 / (Complex64::new(1.0, 0.0) - qk * q64);
        for x in &n64 {
            r *= Complex64::new(1.0, 0.0) - x * qk;
        }
        for y in &d64 {
            r /= Complex64::new(1.0, 0.0) - y * qk;
        }
        if extra != 0 {
            r *= (-qk).powi(extra);
        }
        qk *= q64;
        r
    })
}

fn c64<S: Field>(x: &S) -> Complex64 {
    let (re, im) = x.to_c64();
    Complex64::new(re, im)
}

fn to64<S: Field>(xs: &[S]) -> Vec<Complex64> {
    xs.iter().map(c64).collect()
}

/// `log2` of the largest term of a series with `t_0 = 1` and the given term
/// ratios, scanned in double precision until the terms have clearly decayed.
fn peak_log2(max_terms: usize, mut ratio: impl FnMut(usize) -> Complex64) -> f64 {
    let mut lt = 0.0f64;
    let mut peak = 0.0f64;
    for k in 0..max_terms {
        let r = ratio(k);
        let m = r.norm();
        if m == 0.0 || !m.is_finite() {
            break;
        }
        lt += m.log2();
        peak = peak.max(lt);
        if k > 8 && m < 1.0 && lt < peak - 400.0 {
            break;
        }
    }
    peak
}

/// Runs `f` with inputs lifted by enough guard bits to absorb cancellation
/// among terms of size `2^peak`, and rounds the result back.
fn with_guard_bits<S: Field>(
    peak: f64,
    like: &S,
    f: impl FnOnce(&dyn Fn(&S) -> S) -> Result<Estimate<S>>,
) -> Result<Estimate<S>> {
    let base = like.precision();
    if peak < 8.0 {
        return f(&|x: &S| x.clone());
    }
    let bits = base + peak.ceil() as u32 + 16;
    let e = f(&|x: &S| x.with_precision(bits))?;
    Ok(Estimate {
        value: e.value.with_precision(base),
        est_error: e.est_error,
    })
}

fn bhs_inner<S: Field>(num: &[S], den: &[S], q: &S, arg: &S, cfg: &SeriesConfig) -> Result<Estimate<S>> {
    let one = q.one_like();
    let r = num.len() as i64;
    let s = den.len() as i64;
    let extra = 1 + s - r;
    let term_tol = if S::EXACT { 0.0 } else { cfg.pole_threshold() };
    let term_n = num
        .iter()
        .filter_map(|x| termination_index(x, q, cfg.max_terms.min(2000), term_tol))
        .min();
    if term_n.is_none() {
        if S::EXACT {
            return Err(Error::Divergence(
                "non-terminating series in an exact backend".into(),
            ));
        }
        if q.abs_f64() >= 1.0 {
            return Err(Error::Divergence(format!("|q| = {} >= 1", q.abs_f64())));
        }
        if extra < 0 || (extra == 0 && arg.abs_f64() >= 1.0) {
            return Err(Error::Divergence(format!("|arg| = {} >= 1", arg.abs_f64())));
        }
    }
    let limit = if extra == 0 { arg.abs_f64() } else { 0.0 };
    let mut qk = one.clone();
    let pole_tol = if S::EXACT { 0.0 } else { cfg.pole_threshold() };
    let ratio = |k: usize| -> Result<S> {
        let mut n = one.clone();
        for x in num {
            n = n * &(one.clone() - x.clone() * &qk);
        }
        let mut d = one.clone() - qk.clone() * q;
        for y in den {
            let f = one.clone() - y.clone() * &qk;
            if f.negligible(1.0, pole_tol) {
                return Err(Error::PoleInDenominator(format!("{y} at index {k}")));
            }
            d = d * &f;
        }
        let mut t = n / d * arg;
        if extra != 0 {
            let mut fac = -qk.clone();
            if extra < 0 {
                fac = fac.inv()?;
            }
            t = t * &fac.powi(extra.abs())?;
        }
        qk = qk.clone() * q;
        Ok(t)
    };
    sum_by_ratio(one.clone(), ratio, limit, term_n, cfg)
}

/// Very-well-poised series
/// `sum_k (1 - A q^{2k})/(1 - A) (A, b_1..b_m; q)_k / (q, qA/b_1..qA/b_m; q)_k arg^k`.
pub fn wvp<S: Field>(big_a: &S, bs: &[S], q: &S, arg: &S, cfg: &SeriesConfig) -> Result<Estimate<S>> {
    if S::EXACT {
        return wvp_inner(big_a, bs, q, arg, cfg);
    }
    let (aa, b64, q64, a64) = (c64(big_a), to64(bs), c64(q), c64(arg));
    let one = Complex64::new(1.0, 0.0);
    let mut qk = one;
    let peak = peak_log2(cfg.max_terms, |_| {
        let q2k = qk * qk;
        let mut r = a64 * (one - aa * q2k * q64 * q64) / ((one - aa * q2k) * (one - qk * q64));
        r *= one - aa * qk;
        for b in &b64 {
            r *= (one - b * qk) / (one - q64 * aa / b * qk);
        }
        qk *= q64;
        r
    });
    with_guard_bits(peak, q, |lift| {
        let bs: Vec<S> = bs.iter().map(lift).collect();
        wvp_inner(&lift(big_a), &bs, &lift(q), &lift(arg), cfg)
    })
}

fn wvp_inner<S: Field>(big_a: &S, bs: &[S], q: &S, arg: &S, cfg: &SeriesConfig) -> Result<Estimate<S>> {
    let one = q.one_like();
    let pole_tol = if S::EXACT { 0.0 } else { cfg.pole_threshold() };
    let term_tol = pole_tol;
    let mut nums = vec![big_a.clone()];
    nums.extend(bs.iter().cloned());
    let dens: Vec<S> = bs
        .iter()
        .map(|b| Ok(q.clone() * big_a / b.clone()))
        .collect::<Result<_>>()?;
    let term_n = nums
        .iter()
        .filter_map(|x| termination_index(x, q, cfg.max_terms.min(2000), term_tol))
        .min();
    if term_n.is_none() {
        if S::EXACT {
            return Err(Error::Divergence(
                "non-terminating series in an exact backend".into(),
            ));
        }
        if q.abs_f64() >= 1.0 || arg.abs_f64() >= 1.0 {
            return Err(Error::Divergence(format!("|arg| = {} >= 1", arg.abs_f64())));
        }
    }
    let one_minus_a = one.clone() - big_a;
    if one_minus_a.negligible(1.0, pole_tol) {
        return Err(Error::PoleInDenominator("A = 1".into()));
    }
    let mut qk = one.clone();
    let ratio = |k: usize| -> Result<S> {
        // t_{k+1}/t_k including the (1 - A q^{2k+2}) / (1 - A q^{2k}) factor
        let q2k = qk.clone() * &qk;
        let wp_num = one.clone() - big_a.clone() * &q2k * q * q;
        let wp_den = one.clone() - big_a.clone() * &q2k;
        if wp_den.negligible(1.0, pole_tol) {
            return Err(Error::PoleInDenominator(format!("1 - A q^{}", 2 * k)));
        }
        let mut n = wp_num;
        for x in &nums {
            n = n * &(one.clone() - x.clone() * &qk);
        }
        let mut d = wp_den * &(one.clone() - qk.clone() * q);
        for y in &dens {
            let f = one.clone() - y.clone() * &qk;
            if f.negligible(1.0, pole_tol) {
                return Err(Error::PoleInDenominator(format!("{y} at index {k}")));
            }
            d = d * &f;
        }
        qk = qk.clone() * q;
        Ok(n / d * arg)
    };
    sum_by_ratio(one.clone(), ratio, arg.abs_f64(), term_n, cfg)
}

/// `8W7(A; b, c, d, e, f; q, q^2 A^2 / (bcdef))`.
pub fn w87<S: Field>(big_a: &S, bcdef: [&S; 5], q: &S, cfg: &SeriesConfig) -> Result<Estimate<S>> {
    let mut prod = q.one_like();
    for x in bcdef {
        prod = prod * x;
    }
    let arg = q.clone() * q * big_a * big_a / prod;
    let bs: Vec<S> = bcdef.iter().map(|x| (*x).clone()).collect();
    wvp(big_a, &bs, q, &arg, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn cx(re: f64) -> Cx {
        Cx::real(SeriesConfig::default().prec(), re)
    }

    #[test]
    fn finite_qpoch_negative_index() {
        let q = rat(1, 3);
        let x = rat(5, 7);
        let pos = qpoch(&(x.clone() * q.powi(-2).unwrap()), &q, 2).unwrap();
        assert_eq!(qpoch(&x, &q, -2).unwrap(), pos.inv().unwrap());
        // (x;q)_{m+n} = (x;q)_m (x q^m; q)_n
        let lhs = qpoch(&x, &q, 5).unwrap();
        let rhs = qpoch(&x, &q, 2).unwrap() * qpoch(&(x.clone() * q.powi(2).unwrap()), &q, 3).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_function_at_one_half() {
        let cfg = SeriesConfig::default();
        let v = euler(&cx(0.5), &cfg).unwrap();
        let reference = Cx::parse(cfg.prec(), "0.28878809508660242127889972192923078008891190484").unwrap();
        assert!(v.rel_dist(&reference) < 1e-45, "{v}");
    }

    #[test]
    fn q_binomial_theorem() {
        // 1phi0(a; -; q, z) = (az; q)_inf / (z; q)_inf
        let cfg = SeriesConfig::default();
        let (a, q, z) = (cx(0.3), cx(0.6), cx(0.45));
        let s = bhs(std::slice::from_ref(&a), &[], &q, &z, &cfg).unwrap().value;
        let rhs = qpoch_inf(&(a * &z), &q, &cfg).unwrap() / qpoch_inf(&z, &q, &cfg).unwrap();
        assert!(s.rel_dist(&rhs) < 1e-45);
    }

    #[test]
    fn q_chu_vandermonde_exact() {
        // 2phi1(q^{-n}, b; c; q, q) = (c/b; q)_n / (c; q)_n b^n
        let q = rat(2, 5);
        let (b, c) = (rat(3, 7), rat(11, 13));
        let n = 6;
        let cfg = SeriesConfig::default();
        let s = bhs(&[q.powi(-n).unwrap(), b.clone()], std::slice::from_ref(&c), &q, &q, &cfg).unwrap();
        let rhs = qpoch(&(c.clone() / &b), &q, n).unwrap() / qpoch(&c, &q, n).unwrap() * b.powi(n).unwrap();
        assert_eq!(s.value, rhs);
    }

    #[test]
    fn exact_backend_rejects_infinite_series() {
        let cfg = SeriesConfig::default();
        let r = bhs(&[rat(1, 2)], &[rat(1, 3)], &rat(1, 2), &rat(1, 4), &cfg);
        assert!(matches!(r, Err(Error::Divergence(_))));
    }

    #[test]
    fn divergent_argument_rejected() {
        let cfg = SeriesConfig::default();
        let r = bhs(&[cx(0.2), cx(0.3)], &[cx(0.4)], &cx(0.5), &cx(1.5), &cfg);
        assert!(matches!(r, Err(Error::Divergence(_))));
    }

    #[test]
    fn pole_in_denominator_detected() {
        let cfg = SeriesConfig::default();
        let q = cx(0.5);
        let r = bhs(&[cx(0.2)], &[cx(4.0)], &q, &cx(0.3), &cfg);
        assert!(matches!(r, Err(Error::PoleInDenominator(_))));
    }

    #[test]
    fn very_well_poised_6w5_summation() {
        // 6W5(a; b, c, d; q, qa/(bcd)) =
        //   (qa, qa/(bc), qa/(bd), qa/(cd))_inf / (qa/b, qa/c, qa/d, qa/(bcd))_inf
        let cfg = SeriesConfig::default();
        let q = cx(0.35);
        let (a, b, c, d) = (cx(0.4), cx(0.7), cx(-0.55), cx(0.8));
        let arg = q.clone() * &a / (b.clone() * &c * &d);
        let lhs = wvp(&a, &[b.clone(), c.clone(), d.clone()], &q, &arg, &cfg).unwrap().value;
        let qa = q.clone() * &a;
        let rhs = qpoch_inf_ratio(
            &[
                qa.clone(),
                qa.clone() / (b.clone() * &c),
                qa.clone() / (b.clone() * &d),
                qa.clone() / (c.clone() * &d),
            ],
            &[
                qa.clone() / &b,
                qa.clone() / &c,
                qa.clone() / &d,
                qa.clone() / (b.clone() * &c * &d),
            ],
            &q,
            &cfg,
        )
        .unwrap();
        assert!(lhs.rel_dist(&rhs) < 1e-45, "{lhs} vs {rhs}");
    }

    #[test]
    fn gaussian_shift_example() {
        // G_{q/d}(q/z) / G_{q/d}(z) = (q/z^2)(1 - dz/q)/(1 - d/z)
        let cfg = SeriesConfig::default();
        let p = cfg.prec();
        let q = cx(0.3);
        let d = Cx::new(p, 0.9, 0.2);
        let z = Cx::new(p, 0.6, 0.45);
        let e = q.clone() / &d;
        let lhs = gaussian(&e, &(q.clone() / &z), &q, &cfg).unwrap() / gaussian(&e, &z, &q, &cfg).unwrap();
        let one = q.one_like();
        let rhs = q.clone() / (z.clone() * &z) * (one.clone() - d.clone() * &z / &q) / (one - d / &z);
        assert!(lhs.rel_dist(&rhs) < 1e-45);
    }
}
