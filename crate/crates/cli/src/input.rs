//! Parsing of parameter tuples and scalars from the command line.

use awdaha::params::ParamSet;
use awdaha::sampling::complete_square;
use awdaha::scalar::{bits_for_digits, parse_rational, Cx, Rational};
use awdaha::suites::FixedParams;
use awdaha::{Error, Result};

use crate::Common;

fn is_numeric_token(s: &str) -> bool {
    s.contains(['.', 'e', 'E', 'i'])
}

/// The `--params`/`--q` tuple, if `--params` was given. Decimal or complex
/// entries make the tuple numeric; `r-square` in the last slot completes
/// `d` so that `q^{-1} abcd` is a rational square.
pub fn fixed_params(c: &Common) -> Result<Option<FixedParams>> {
    let Some(spec) = &c.params else {
        if c.q.is_some() {
            return Err(Error::Parse("--q needs --params".into()));
        }
        return Ok(None);
    };
    let toks: Vec<&str> = spec.split(',').map(str::trim).collect();
    if toks.len() != 4 {
        return Err(Error::Parse(format!("--params needs 4 entries, got {}", toks.len())));
    }
    let q_tok = c.q.as_deref().unwrap_or("1/3");
    let square = toks[3] == "r-square";
    let numeric = toks.iter().chain([&q_tok]).any(|t| *t != "r-square" && is_numeric_token(t));
    if square && numeric {
        return Err(Error::Parse("r-square needs exact a, b, c and q".into()));
    }
    if numeric {
        let prec = bits_for_digits(c.digits);
        let v: Vec<Cx> = toks
            .iter()
            .chain([&q_tok])
            .map(|t| Cx::parse(prec, t))
            .collect::<Result<_>>()?;
        let p = ParamSet::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone())?;
        return Ok(Some(FixedParams::Numeric(p)));
    }
    let a = parse_rational(toks[0])?;
    let b = parse_rational(toks[1])?;
    let cc = parse_rational(toks[2])?;
    let q = parse_rational(q_tok)?;
    let d = if square {
        complete_square(&a, &b, &cc, &q, c.seed)?
    } else {
        parse_rational(toks[3])?
    };
    Ok(Some(FixedParams::Exact(ParamSet::new(a, b, cc, d, q)?)))
}

/// Exact tuple for exact-only commands; falls back to a sampled tuple.
pub fn exact_params(c: &Common) -> Result<ParamSet<Rational>> {
    match fixed_params(c)? {
        Some(FixedParams::Exact(p)) => Ok(p),
        Some(FixedParams::Numeric(_)) => Err(Error::Parse("this command needs exact parameters".into())),
        None => Ok(awdaha::sampling::exact_generic(c.seed, 0)),
    }
}

/// Exact rational if possible, else `None`.
pub fn exact_scalar(s: &str) -> Option<Rational> {
    if is_numeric_token(s) {
        None
    } else {
        parse_rational(s).ok()
    }
}
