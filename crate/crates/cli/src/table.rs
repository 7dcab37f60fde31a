//! `table`: kernel coefficients, polynomial coefficients, parameter orbits.

use std::process::ExitCode;

use awdaha::awfunc::{kernel_coefficient, nonsym_kernel_pair};
use awdaha::awpoly::{aw_e_plus, aw_nonsym_e_closed, aw_p};
use awdaha::params::ParamMapName;
use awdaha::{Error, Result};
use serde_json::{json, Value};

use crate::input::exact_params;
use crate::{emit, Format, TableArgs};

/// `lo..hi` (inclusive) or a single index.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("bad range {s}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn build(args: &TableArgs) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let p = exact_params(&args.common)?;
    match args.kind.as_str() {
        "kernel-coefficients" => {
            let (lo, hi) = parse_range(&args.m)?;
            let mut rows = Vec::new();
            for m in lo..=hi {
                let (minus, plus) = nonsym_kernel_pair(m, &p)?;
                rows.push(vec![
                    m.to_string(),
                    kernel_coefficient(m, &p)?.to_string(),
                    minus.to_string(),
                    plus.to_string(),
                ]);
            }
            Ok((vec!["m".into(), "symmetric".into(), "nonsym_minus".into(), "nonsym_plus".into()], rows))
        }
        "poly-coeffs" => {
            let n = args.n.ok_or_else(|| Error::Parse("--n is required".into()))?;
            let which = args.which.as_deref().unwrap_or("plus");
            if which != "nonsym" && n < 0 {
                return Err(Error::Parse("--n must be non-negative".into()));
            }
            let poly = match which {
                "plus" => aw_e_plus(n as usize, &p)?,
                "p" => aw_p(n as usize, &p)?,
                "nonsym" => aw_nonsym_e_closed(n, &p)?,
                w => return Err(Error::Parse(format!("--which must be plus, p or nonsym, got {w}"))),
            };
            let rows = poly.terms().map(|(k, c)| vec![k.to_string(), c.to_string()]).collect();
            Ok((vec!["power".into(), "coeff".into()], rows))
        }
        "orbit" => {
            let gens: Vec<ParamMapName> = args
                .which
                .as_deref()
                .unwrap_or("t0hat,t2,t3,t4")
                .split(',')
                .map(|g| ParamMapName::parse(g.trim()))
                .collect::<Result<_>>()?;
            let orbit = p.orbit(&gens, 100_000)?;
            let rows = orbit
                .iter()
                .map(|x| x.entries().iter().map(|e| e.to_string()).collect())
                .collect();
            Ok((vec!["a".into(), "b".into(), "c".into(), "d".into()], rows))
        }
        k => Err(Error::UnknownName(format!("table kind {k}"))),
    }
}

fn render(header: &[String], rows: &[Vec<String>], format: Format) -> String {
    match format {
        Format::Json => {
            let objs: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().cloned().zip(r.iter().map(|x| json!(x))).collect()))
                .collect();
            serde_json::to_string_pretty(&objs).expect("table serializes") + "\n"
        }
        Format::Csv | Format::Text => {
            let mut s = header.join(",") + "\n";
            for r in rows {
                s += &(r.join(",") + "\n");
            }
            s
        }
    }
}

pub fn run(args: TableArgs) -> ExitCode {
    let (header, rows) = match build(&args) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match emit(&args.common.out, &render(&header, &rows, args.common.format)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
