//! Scalar backends.
//!
//! Two fields implement [`Field`]:
//! - [`Rational`] (arbitrary precision rationals) for exact identity checks,
//! - [`Cx`] (MPC complex numbers at a chosen binary precision) for analytic work.
//!
//! Constants are built "like" an existing value so numeric code never consults
//! global precision state.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::traits::{One, Signed, ToPrimitive, Zero};
use rug::float::Round;
use rug::{Complex, Float};

use crate::error::{Error, Result};

pub type Rational = num::BigRational;

/// Extra bits carried beyond the requested decimal digits.
pub const GUARD_BITS: u32 = 40;

/// Binary precision used for `digits` significant decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
}

pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// True when arithmetic is exact (equality is structural).
    const EXACT: bool;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn rational_like(&self, r: &Rational) -> Self;

    /// Exact test for zero. Numeric backends only report literal zeros.
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(format!("inverse of {self}")));
        }
        Ok(self.one_like() / self.clone())
    }

    /// Principal square root. Exact backends fail on non-squares.
    fn sqrt(&self) -> Result<Self>;

    /// Integer power; negative exponents invert (zero base yields an error).
    fn powi(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.powi(-n);
        }
        let mut base = self.clone();
        let mut acc = self.one_like();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        Ok(acc)
    }

    /// Working precision in bits; `u32::MAX` for exact values.
    fn precision(&self) -> u32 {
        u32::MAX
    }

    /// The value rounded or extended to `bits` of precision (exact values are
    /// returned unchanged).
    fn with_precision(&self, _bits: u32) -> Self {
        self.clone()
    }

    /// Modulus as an `f64` (used for tolerances and diagnostics).
    fn abs_f64(&self) -> f64;

    /// Real and imaginary parts as `f64`.
    fn to_c64(&self) -> (f64, f64);

    /// Relative distance `|x - y| / max(|x|, |y|)`, absolute when both vanish.
    fn rel_dist(&self, other: &Self) -> f64 {
        let d = (self.clone() - other).abs_f64();
        if d == 0.0 {
            return 0.0;
        }
        let m = self.abs_f64().max(other.abs_f64());
        if m == 0.0 || !m.is_finite() {
            d
        } else {
            d / m
        }
    }

    /// Equality: structural for exact fields, relative tolerance otherwise.
    fn close_to(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            self.rel_dist(other) <= tol
        }
    }

    /// Whether the value is numerically negligible relative to `scale`.
    fn negligible(&self, scale: f64, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.abs_f64() <= tol * scale.max(f64::MIN_POSITIVE)
        }
    }
}

// ---------------------------------------------------------------------------
// Exact rationals

impl Field for Rational {
    const EXACT: bool = true;

    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn int_like(&self, n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::NotASquare(self.to_string()));
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Ok(Rational::new(rn, rd))
        } else {
            Err(Error::NotASquare(self.to_string()))
        }
    }
    fn abs_f64(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn to_c64(&self) -> (f64, f64) {
        (self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

/// Parses `"p/q"`, integers, and finite decimals (`"0.125"`, `"-2.5e-3"`) exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if Zero::is_zero(&d) {
            return Err(Error::Parse(format!("zero denominator in {s}")));
        }
        return Ok(n / d);
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (
            &s[..i],
            s[i + 1..]
                .parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad exponent in {s}")))?,
        ),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("not a number: {s}")));
    }
    let all: String = format!("{int_part}{frac_part}");
    if !all.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a number: {s}")));
    }
    let n = BigInt::from_str(if all.is_empty() { "0" } else { &all })
        .map_err(|e| Error::Parse(e.to_string()))?;
    let scale = exp - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let mut r = Rational::from_integer(n) * num::pow::Pow::pow(&ten, scale);
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Formats a rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------------------
// Multiprecision complex numbers

/// Complex number at a fixed binary precision (MPC backed).
#[derive(Clone, Debug, PartialEq)]
pub struct Cx(pub Complex);

impl Cx {
    pub fn new(prec: u32, re: f64, im: f64) -> Cx {
        Cx(Complex::with_val(prec, (re, im)))
    }

    pub fn real(prec: u32, re: f64) -> Cx {
        Cx::new(prec, re, 0.0)
    }

    pub fn from_rational(prec: u32, r: &Rational) -> Cx {
        let n = Float::with_val(prec, Float::parse(r.numer().to_string()).expect("integer"));
        let d = Float::with_val(prec, Float::parse(r.denom().to_string()).expect("integer"));
        Cx(Complex::with_val(prec, (n / d, 0)))
    }

    pub fn from_parts(re: Float, im: Float) -> Cx {
        let prec = re.prec().max(im.prec());
        Cx(Complex::with_val(prec, (re, im)))
    }

    pub fn i(prec: u32) -> Cx {
        Cx::new(prec, 0.0, 1.0)
    }

    pub fn prec(&self) -> u32 {
        self.0.prec().0.max(self.0.prec().1)
    }

    pub fn re(&self) -> &Float {
        self.0.real()
    }

    pub fn im(&self) -> &Float {
        self.0.imag()
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.0.abs_ref())
    }

    pub fn arg_f64(&self) -> f64 {
        Float::with_val(53, self.0.arg_ref()).to_f64()
    }

    pub fn conj(&self) -> Cx {
        Cx(Complex::with_val(self.prec(), self.0.conj_ref()))
    }

    pub fn exp(&self) -> Cx {
        Cx(self.0.clone().exp())
    }

    pub fn ln(&self) -> Cx {
        Cx(self.0.clone().ln())
    }

    pub fn is_finite(&self) -> bool {
        self.0.real().is_finite() && self.0.imag().is_finite()
    }

    /// Parses real or complex literals: `"0.7"`, `"3/4"`, `"0.5+0.2i"`, `"-1i"`.
    pub fn parse(prec: u32, s: &str) -> Result<Cx> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not part of an exponent
            let bytes = body.as_bytes();
            let mut split = None;
            for i in (1..bytes.len()).rev() {
                if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                    split = Some(i);
                    break;
                }
            }
            let (re, im) = match split {
                Some(i) => (&body[..i], &body[i..]),
                None => ("0", body),
            };
            let im = match im {
                "" | "+" => "1",
                "-" => "-1",
                x => x,
            };
            let re = parse_rational(re)?;
            let im = parse_rational(im)?;
            let r = Cx::from_rational(prec, &re);
            let i = Cx::from_rational(prec, &im);
            return Ok(r + i * Cx::i(prec));
        }
        Ok(Cx::from_rational(prec, &parse_rational(&t)?))
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn format_parts(&self, digits: usize) -> (String, String) {
        (
            self.re().to_string_radix_round(10, Some(digits), Round::Nearest),
            self.im().to_string_radix_round(10, Some(digits), Round::Nearest),
        )
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.format_parts(20);
        if self.im().is_zero() {
            write!(f, "{re}")
        } else if im.starts_with('-') {
            write!(f, "{re}{im}i")
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

macro_rules! cx_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<Cx> for Cx {
            type Output = Cx;
            fn $m(self, o: Cx) -> Cx {
                let p = self.prec().max(o.prec());
                Cx(Complex::with_val(p, &self.0 $op &o.0))
            }
        }
        impl<'a> $tr<&'a Cx> for Cx {
            type Output = Cx;
            fn $m(self, o: &'a Cx) -> Cx {
                let p = self.prec().max(o.prec());
                Cx(Complex::with_val(p, &self.0 $op &o.0))
            }
        }
        impl<'a, 'b> $tr<&'b Cx> for &'a Cx {
            type Output = Cx;
            fn $m(self, o: &'b Cx) -> Cx {
                let p = self.prec().max(o.prec());
                Cx(Complex::with_val(p, &self.0 $op &o.0))
            }
        }
    };
}

cx_binop!(Add, add, +);
cx_binop!(Sub, sub, -);
cx_binop!(Mul, mul, *);
cx_binop!(Div, div, /);

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx(-self.0)
    }
}

impl Field for Cx {
    const EXACT: bool = false;

    fn zero_like(&self) -> Self {
        Cx(Complex::new(self.prec()))
    }
    fn one_like(&self) -> Self {
        Cx(Complex::with_val(self.prec(), 1))
    }
    fn int_like(&self, n: i64) -> Self {
        Cx(Complex::with_val(self.prec(), n))
    }
    fn rational_like(&self, r: &Rational) -> Self {
        Cx::from_rational(self.prec(), r)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero(format!("inverse of {self}")));
        }
        Ok(Cx(Complex::with_val(self.prec(), self.0.recip_ref())))
    }
    fn sqrt(&self) -> Result<Self> {
        if self.im().is_zero() && self.re().is_sign_negative() && !self.re().is_zero() {
            return Err(Error::BranchCut(self.to_string()));
        }
        Ok(Cx(Complex::with_val(self.prec(), self.0.sqrt_ref())))
    }
    fn precision(&self) -> u32 {
        self.prec()
    }
    fn with_precision(&self, bits: u32) -> Self {
        Cx(Complex::with_val(bits, &self.0))
    }
    fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }
    fn to_c64(&self) -> (f64, f64) {
        (self.re().to_f64(), self.im().to_f64())
    }
}

/// Converts an exact value into the numeric backend.
pub fn to_cx(prec: u32, r: &Rational) -> Cx {
    Cx::from_rational(prec, r)
}

/// Shorthand for building small exact rationals in tests and samplers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_exact_and_failing() {
        assert_eq!(rat(9, 4).sqrt().unwrap(), rat(3, 2));
        assert!(matches!(rat(2, 1).sqrt(), Err(Error::NotASquare(_))));
        assert!(rat(-4, 1).sqrt().is_err());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("-2.5e-1").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn cx_parse_complex() {
        let p = bits_for_digits(30);
        let z = Cx::parse(p, "0.5-0.25i").unwrap();
        let (re, im) = z.to_c64();
        assert_eq!((re, im), (0.5, -0.25));
        let w = Cx::parse(p, "2i").unwrap();
        assert_eq!(w.to_c64(), (0.0, 2.0));
    }

    #[test]
    fn cx_branch_cut() {
        let p = bits_for_digits(30);
        assert!(matches!(Cx::real(p, -2.0).sqrt(), Err(Error::BranchCut(_))));
        let s = Cx::new(p, -2.0, 1e-30).sqrt().unwrap();
        assert!(s.im().to_f64() > 1.0);
    }

    #[test]
    fn powi_negative() {
        assert_eq!(rat(2, 3).powi(-3).unwrap(), rat(27, 8));
        let p = bits_for_digits(40);
        let x = Cx::real(p, 0.5).powi(-10).unwrap();
        assert!(x.rel_dist(&Cx::real(p, 1024.0)) < 1e-40);
    }
}
