//! `eval`: one value with an error estimate, as a JSON row.

use std::process::ExitCode;

use awdaha::awfunc::{
    admissible_point_for, admissible_sample, aw_function_est, f_function, kernel_coefficient, method_domain,
    nonsym_aw_function_est, nonsym_kernel_pair, normalization_factor, AdmissiblePoint, Method, Normalization,
    NsMethod,
};
use awdaha::awpoly::{aw_e_plus_at, aw_nonsym_e_at};
use awdaha::params::ParamSet;
use awdaha::qkernels::SeriesConfig;
use awdaha::scalar::{format_rational, Cx, Field, Rational};
use awdaha::suites::FixedParams;
use awdaha::{Error, Result};
use serde_json::{json, Value};

use crate::input::{exact_scalar, fixed_params};
use crate::{emit, EvalArgs, Format};

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidParams(_) => "invalid_params",
        Error::DegenerateParams(_) => "degenerate_params",
        Error::NotASquare(_) => "not_a_square",
        Error::BranchCut(_) => "branch_cut",
        Error::DivisionByZero(_) => "division_by_zero",
        Error::Divergence(_) => "divergence",
        Error::PoleInDenominator(_) => "pole_in_denominator",
        Error::Pole(_) => "pole",
        Error::NonConvergence(_) => "non_convergence",
        Error::NotLaurentPolynomial => "not_laurent_polynomial",
        Error::UnsupportedShift(_) => "unsupported_shift",
        Error::SingularPoint(_) => "singular_point",
        Error::OutOfDomain(_) => "out_of_domain",
        Error::UnknownName(_) => "unknown_name",
        Error::Parse(_) => "parse",
        Error::PrecisionTooLow(_) => "precision_too_low",
        Error::Internal(_) => "internal",
        Error::Io(_) => "io",
    }
}

fn cx_parts(x: &Cx, digits: u32) -> (String, String) {
    x.format_parts(digits as usize)
}

fn numeric_params(args: &EvalArgs, cfg: &SeriesConfig) -> Result<Option<ParamSet<Cx>>> {
    Ok(fixed_params(&args.common)?.map(|p| match p {
        FixedParams::Exact(p) => p.convert(|x| Cx::from_rational(cfg.prec(), x)),
        FixedParams::Numeric(p) => p.convert(|x| x.with_precision(cfg.prec())),
    }))
}

/// Parses `gamma`/`z`, where `a` and `at` stand for `a` and the dual `a~`.
fn point_arg(s: &str, p: &ParamSet<Cx>, prec: u32) -> Result<Cx> {
    match s {
        "a" => Ok(p.a.clone()),
        "at" | "a~" => p.dual_a(),
        "1/a" => Ok(p.a.inv()?),
        _ => Cx::parse(prec, s),
    }
}

/// Parameters and `(gamma, z)` for the function evaluations; missing pieces
/// come from the seeded admissible sampler.
fn function_point(args: &EvalArgs, cfg: &SeriesConfig) -> Result<AdmissiblePoint> {
    let prec = cfg.prec();
    let base = match numeric_params(args, cfg)? {
        Some(p) => match admissible_point_for(&p, args.common.seed, 0, cfg) {
            Ok(pt) => pt,
            Err(_) => AdmissiblePoint {
                gamma: p.dual_a()?,
                z: p.a.clone(),
                p,
            },
        },
        None => admissible_sample(args.common.seed, 0, cfg)?,
    };
    let gamma = match &args.gamma {
        Some(g) => point_arg(g, &base.p, prec)?,
        None => base.gamma.clone(),
    };
    let z = match &args.z {
        Some(z) => point_arg(z, &base.p, prec)?,
        None => base.z.clone(),
    };
    Ok(AdmissiblePoint { gamma, z, p: base.p })
}

/// `--method`, or the first method whose domain contains the point.
fn pick_method(args: &EvalArgs, pt: &AdmissiblePoint, cfg: &SeriesConfig) -> Result<Method> {
    match args.method.as_deref() {
        Some(m) if m != "auto" => Method::parse(m),
        _ => [Method::Kernel, Method::W87, Method::Sum4phi3, Method::Suslov]
            .into_iter()
            .find(|m| method_domain(*m, &pt.gamma, &pt.z, &pt.p, cfg).is_ok())
            .ok_or_else(|| Error::OutOfDomain(format!("gamma={} z={}", pt.gamma, pt.z))),
    }
}

fn row(
    func: &str,
    method: &str,
    pt: &AdmissiblePoint,
    value: &Cx,
    est_error: Option<f64>,
    digits: u32,
) -> Value {
    let (re, im) = cx_parts(value, digits);
    json!({
        "fn": func,
        "method": method,
        "gamma": pt.gamma.to_string(),
        "z": pt.z.to_string(),
        "params": pt.p.to_string(),
        "value_re": re,
        "value_im": im,
        "est_error": est_error,
    })
}

fn exact_or_cx<T>(
    args: &EvalArgs,
    cfg: &SeriesConfig,
    exact: impl FnOnce(&ParamSet<Rational>) -> Result<T>,
    numeric: impl FnOnce(&ParamSet<Cx>) -> Result<T>,
) -> Result<T> {
    match fixed_params(&args.common)? {
        Some(FixedParams::Exact(p)) => exact(&p),
        Some(FixedParams::Numeric(p)) => numeric(&p.convert(|x| x.with_precision(cfg.prec()))),
        None => exact(&awdaha::sampling::exact_generic(args.common.seed, 0)),
    }
}

fn scalar_row<S: Field>(func: &str, p: &ParamSet<S>, extra: Value, value: &S) -> Value {
    let mut v = json!({
        "fn": func,
        "method": "exact",
        "params": p.to_string(),
        "value": value.to_string(),
        "est_error": Value::Null,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

fn polynomial_value(args: &EvalArgs, cfg: &SeriesConfig, nonsym: bool) -> Result<Value> {
    let n = args.n.ok_or_else(|| Error::Parse("--n is required".into()))?;
    if !nonsym && n < 0 {
        return Err(Error::Parse("--n must be non-negative".into()));
    }
    let z_tok = args.z.clone().ok_or_else(|| Error::Parse("--z is required".into()))?;
    let func = if nonsym { "nonsym_poly" } else { "Eplus_poly" };
    let eval = |p: &ParamSet<Cx>, z: &Cx| -> Result<Cx> {
        if nonsym {
            aw_nonsym_e_at(n, z, p, cfg)
        } else {
            aw_e_plus_at(n as usize, z, p, cfg)
        }
    };
    let sampled = || awdaha::sampling::exact_generic(args.common.seed, 0);
    let p = match fixed_params(&args.common)? {
        Some(FixedParams::Exact(p)) => p,
        Some(FixedParams::Numeric(p)) => {
            return numeric_polynomial(args, cfg, func, n, &z_tok, p.convert(|x| x.with_precision(cfg.prec())), eval)
        }
        None => sampled(),
    };
    match exact_scalar(&z_tok) {
        Some(z) => {
            let v = if nonsym {
                aw_nonsym_e_at(n, &z, &p, cfg)?
            } else {
                aw_e_plus_at(n as usize, &z, &p, cfg)?
            };
            Ok(scalar_row(func, &p, json!({"n": n, "z": format_rational(&z)}), &v))
        }
        None => {
            let p = p.convert(|x| Cx::from_rational(cfg.prec(), x));
            numeric_polynomial(args, cfg, func, n, &z_tok, p, eval)
        }
    }
}

fn numeric_polynomial(
    args: &EvalArgs,
    cfg: &SeriesConfig,
    func: &str,
    n: i64,
    z_tok: &str,
    p: ParamSet<Cx>,
    eval: impl Fn(&ParamSet<Cx>, &Cx) -> Result<Cx>,
) -> Result<Value> {
    let z = point_arg(z_tok, &p, cfg.prec())?;
    let v = eval(&p, &z)?;
    let pt = AdmissiblePoint {
        gamma: p.q.zero_like(),
        z,
        p,
    };
    let mut r = row(func, "exact-sum", &pt, &v, None, args.common.digits);
    r["gamma"] = Value::Null;
    r["n"] = json!(n);
    Ok(r)
}

fn compute(args: &EvalArgs) -> Result<Value> {
    let cfg = SeriesConfig::with_digits(args.common.digits);
    let digits = args.common.digits;
    match args.func.as_str() {
        "Eplus" | "phi" => {
            let pt = function_point(args, &cfg)?;
            let method = pick_method(args, &pt, &cfg)?;
            let est = aw_function_est(&pt.gamma, &pt.z, &pt.p, method, &cfg)?;
            let (value, err) = if args.func == "phi" {
                let s = normalization_factor(&pt.p, Normalization::Phi, &cfg)?;
                let e = est.est_error * s.abs_f64();
                (est.value * &s, e)
            } else {
                (est.value, est.est_error)
            };
            Ok(row(&args.func, method.as_str(), &pt, &value, Some(err), digits))
        }
        "E" => {
            let pt = function_point(args, &cfg)?;
            let method = match args.method.as_deref() {
                Some(m) if m != "auto" => NsMethod::parse(m)?,
                _ => NsMethod::Kernel,
            };
            let est = nonsym_aw_function_est(&pt.gamma, &pt.z, &pt.p, method, &cfg)?;
            Ok(row("E", &method.to_string(), &pt, &est.value, Some(est.est_error), digits))
        }
        "F" => {
            let pt = function_point(args, &cfg)?;
            let method = pick_method(args, &pt, &cfg)?;
            let v = f_function(&pt.gamma, &pt.z, &pt.p, method, &cfg)?;
            Ok(row("F", method.as_str(), &pt, &v, None, digits))
        }
        "Eplus_poly" => polynomial_value(args, &cfg, false),
        "nonsym_poly" => polynomial_value(args, &cfg, true),
        "kernel_coeff" => {
            let m = args.m.ok_or_else(|| Error::Parse("--m is required".into()))?;
            let nonsym = match args.which.as_str() {
                "sym" => false,
                "nonsym" => true,
                w => return Err(Error::Parse(format!("--which must be sym or nonsym, got {w}"))),
            };
            exact_or_cx(
                args,
                &cfg,
                |p| kernel_row(m, nonsym, p),
                |p| kernel_row(m, nonsym, p),
            )
        }
        f => Err(Error::UnknownName(format!("function {f}"))),
    }
}

fn kernel_row<S: Field>(m: usize, nonsym: bool, p: &ParamSet<S>) -> Result<Value> {
    if nonsym {
        let (minus, plus) = nonsym_kernel_pair(m, p)?;
        let mut v = scalar_row("kernel_coeff", p, json!({"m": m, "which": "nonsym"}), &plus);
        v["value"] = json!([minus.to_string(), plus.to_string()]);
        Ok(v)
    } else {
        let c = kernel_coefficient(m, p)?;
        Ok(scalar_row("kernel_coeff", p, json!({"m": m, "which": "sym"}), &c))
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => v.to_string() + "\n",
        Format::Text | Format::Csv => {
            let mut s = String::new();
            if let Value::Object(m) = v {
                for (k, x) in m {
                    let x = match x {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    s += &format!("{k}: {x}\n");
                }
            }
            s
        }
    }
}

pub fn run(args: EvalArgs) -> ExitCode {
    match compute(&args) {
        Ok(v) => match emit(&args.common.out, &render(&v, args.common.format)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            let v = json!({"error": error_kind(&e), "message": e.to_string()});
            println!("{v}");
            ExitCode::from(1)
        }
    }
}
