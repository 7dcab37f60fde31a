//! Coefficients of the kernel expansions and their assembly from Gaussian,
//! norm and `C`-function ratios. Generic over [`Field`], so exact for
//! rational tuples.

use crate::error::{Error, Result};
use crate::params::ParamSet;
use crate::qkernels::{qpoch, qpoch_multi};
use crate::scalar::Field;

fn nonzero<S: Field>(x: S, what: &str) -> Result<S> {
    if x.negligible(1.0, 1e-30) {
        return Err(Error::DegenerateParams(format!("{what} vanishes")));
    }
    Ok(x)
}

/// `(-1)^m (ad)^{-m} q^{m(m+1)/2} (ab, ac, abc/d; q)_m / (qb/d, qc/d, q; q)_m`.
fn common<S: Field>(m: usize, p: &ParamSet<S>) -> Result<S> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let mi = m as i64;
    let qd = q.clone() / d;
    let sign = if m.is_multiple_of(2) { q.one_like() } else { -q.one_like() };
    let num = qpoch_multi(&[a.clone() * b, a.clone() * c, a.clone() * b * c / d.clone()], q, mi)?;
    let den = nonzero(
        qpoch_multi(&[qd.clone() * b, qd * c, q.clone()], q, mi)?,
        "(qb/d, qc/d, q; q)_m",
    )?;
    Ok(sign * &(a.clone() * d).powi(-mi)? * &q.powi(mi * (mi + 1) / 2)? * &num / den)
}

/// Coefficient of `E_m^+(z; a,b,c,q/d) E_m^+(gamma; a~,b~,c~,q/d~)` in the
/// symmetric kernel expansion.
pub fn kernel_coefficient<S: Field>(m: usize, p: &ParamSet<S>) -> Result<S> {
    let (q, o) = (&p.q, p.q.one_like());
    let r = p.a.clone() * &p.b * &p.c / p.d.clone();
    let ratio = (o.clone() - q.powi(2 * m as i64)? * &r) / nonzero(o - r, "1 - abc/d")?;
    Ok(common(m, p)? * &ratio)
}

/// Coefficients `(minus, plus)` of `E_{-m} (x) E_{-m}` and `E_m (x) E_m` in the
/// non-symmetric kernel expansion; `minus = 0` at `m = 0`.
pub fn nonsym_kernel_pair<S: Field>(m: usize, p: &ParamSet<S>) -> Result<(S, S)> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let o = q.one_like();
    let qm = q.powi(m as i64)?;
    let ab = a.clone() * b;
    let r = ab.clone() * c / d.clone();
    let den = nonzero((o.clone() - &ab) * &(o.clone() - &r), "(1 - ab)(1 - abc/d)")?;
    let k = common(m, p)? / den;
    let minus = -(ab.clone() * &(o.clone() - &qm) * &(o.clone() - qm.clone() * c / d.clone()));
    let plus = (o.clone() - qm.clone() * &ab) * &(o - qm * &r);
    Ok((k.clone() * &minus, k * &plus))
}

/// Pieces of the kernel weight at spectral index `m`, each computed from its
/// own definition, and their products.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightBreakdown<S> {
    /// `G_e(q^m s) / G_e(s)` with `e = sqrt(bcd/a)`, `s = sqrt(abc/d)`, from
    /// `G_e(x) = 1/(ex, e/x; q)_inf`.
    pub gaussian_ratio: S,
    /// Ratio of `N^+` at `q^m s` and `s`.
    pub norm_ratio: S,
    /// `C(q^m s) / C(1/s)` with `C(x) = (1 - s/x)(1 - s'/x)/(1 - x^{-2})`,
    /// `s' = sqrt(abd/c)`.
    pub c_ratio_minus: S,
    /// `C(q^{-m}/s) / C(1/s)`.
    pub c_ratio_plus: S,
    /// `gaussian_ratio * norm_ratio`.
    pub symmetric: S,
    pub minus: S,
    pub plus: S,
}

/// `C(x)` given `s/x`, `s'/x` and `x^{-2}`.
fn c_function<S: Field>(u: &S, v: &S, x_inv_sq: &S) -> Result<S> {
    let o = u.one_like();
    let den = nonzero(o.clone() - x_inv_sq, "1 - x^-2")?;
    Ok((o.clone() - u) * &(o - v) / den)
}

/// Assembles the weight at index `m` without using the closed-form kernel
/// coefficients. All square roots cancel: `e s = bc`, `e/s = d/a`,
/// `s'/s = d/c`, `s s' = ab`.
pub fn assembled_weight<S: Field>(m: usize, p: &ParamSet<S>) -> Result<WeightBreakdown<S>> {
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let mi = m as i64;
    let qm = q.powi(mi)?;
    let qmi = q.powi(-mi)?;
    // (e s, e/s; q)_inf / (e q^m s, e q^{-m}/s; q)_inf
    let gaussian_ratio = qpoch(&(b.clone() * c), q, mi)?
        / nonzero(qpoch(&(qmi.clone() * d / a.clone()), q, mi)?, "(q^-m d/a; q)_m")?;
    let s2 = a.clone() * b * c / d.clone();
    let qd = q.clone() / d;
    let norm_num = qpoch_multi(&[a.clone() * b, a.clone() * c, qd.clone() * a, s2.clone()], q, mi)?;
    let norm_den = qpoch_multi(&[b.clone() * c, qd.clone() * b, qd * c, q.clone()], q, mi)?;
    let o = q.one_like();
    let norm_ratio = a.powi(-2 * mi)? * &(o.clone() - q.powi(2 * mi)? * &s2) / nonzero(o.clone() - &s2, "1 - abc/d")?
        * &norm_num
        / nonzero(norm_den, "(bc, qb/d, qc/d, q; q)_m")?;
    let ab = a.clone() * b;
    // x = 1/s: s/x = s^2, s'/x = ab, x^-2 = s^2
    let c_base = nonzero(c_function(&s2, &ab, &s2)?, "C(1/s)")?;
    // x = q^m s: s/x = q^-m, s'/x = q^-m d/c, x^-2 = q^-2m / s^2
    let c_minus = c_function(&qmi, &(qmi.clone() * d / c.clone()), &(qmi.clone() * &qmi / s2.clone()))?;
    // x = q^-m / s: s/x = q^m s^2, s'/x = q^m ab, x^-2 = q^2m s^2
    let c_plus = c_function(&(qm.clone() * &s2), &(qm.clone() * &ab), &(qm.clone() * &qm * &s2))?;
    let c_ratio_minus = c_minus / c_base.clone();
    let c_ratio_plus = c_plus / c_base;
    let symmetric = gaussian_ratio.clone() * &norm_ratio;
    Ok(WeightBreakdown {
        minus: symmetric.clone() * &c_ratio_minus,
        plus: symmetric.clone() * &c_ratio_plus,
        gaussian_ratio,
        norm_ratio,
        c_ratio_minus,
        c_ratio_plus,
        symmetric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::exact_generic;
    use crate::scalar::rat;

    #[test]
    fn index_zero() {
        let p = exact_generic(3, 0);
        assert_eq!(kernel_coefficient(0, &p).unwrap(), rat(1, 1));
        let (minus, plus) = nonsym_kernel_pair(0, &p).unwrap();
        assert_eq!(minus, rat(0, 1));
        assert_eq!(plus, rat(1, 1));
        let w = assembled_weight(0, &p).unwrap();
        assert_eq!(w.c_ratio_plus, rat(1, 1));
        assert_eq!(w.c_ratio_minus, rat(0, 1));
    }

    #[test]
    fn index_one_by_hand() {
        // -(ad)^{-1} q (1 - q^2 abc/d)/(1 - abc/d) (1-ab)(1-ac)(1-abc/d) / ((1-qb/d)(1-qc/d)(1-q))
        let p = ParamSet::raw(rat(2, 3), rat(5, 7), rat(3, 11), rat(7, 5), rat(1, 3));
        let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
        let o = rat(1, 1);
        let r = a * b * c / d;
        let expected = -(q / (a * d)) * (&o - q * q * &r) * (&o - a * b) * (&o - a * c)
            / ((&o - q * b / d) * (&o - q * c / d) * (&o - q));
        assert_eq!(kernel_coefficient(1, &p).unwrap(), expected);
    }

    #[test]
    fn gaussian_ratio_closed_form() {
        // (bc; q)_m / (qa/d; q)_m (-a/d)^m q^{m(m+1)/2}
        let p = exact_generic(4, 1);
        let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
        for m in 0..6i64 {
            let w = assembled_weight(m as usize, &p).unwrap();
            let closed = qpoch(&(b * c), q, m).unwrap() / qpoch(&(q * a / d), q, m).unwrap()
                * (-(a / d)).powi(m).unwrap()
                * q.powi(m * (m + 1) / 2).unwrap();
            assert_eq!(w.gaussian_ratio, closed);
        }
    }
}
