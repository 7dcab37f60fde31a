//! Named verification suites. Each suite runs a fixed set of check groups
//! over seeded samples (or one user-supplied tuple) and reports one row per
//! check and sample, sorted by check id and then sample index.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::awfunc::checks as fc;
use crate::awfunc::{admissible_point_for, admissible_sample, AdmissiblePoint, Method};
use crate::awpoly;
use crate::check::Check;
use crate::daha::automorphism::CHECKED_AUTOMORPHISMS;
use crate::daha::{verify_automorphism, verify_daha_relations, verify_gaussian_conjugations, verify_group_relations, verify_spherical};
use crate::error::{Error, Result};
use crate::params::{ParamMapName, ParamSet};
use crate::qkernels::SeriesConfig;
use crate::sampling::{exact_generic, exact_square, GENERIC_KMAX};
use crate::scalar::{Cx, Field, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    DahaRelations,
    Automorphisms,
    GaussianConjugation,
    AwPolyIdentities,
    NonsymPolyIdentities,
    AwFuncCrosscheck,
    AwFuncSymmetries,
    NonsymFunc,
    WeightAssembly,
    FFunction,
    All,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::DahaRelations,
        Suite::Automorphisms,
        Suite::GaussianConjugation,
        Suite::AwPolyIdentities,
        Suite::NonsymPolyIdentities,
        Suite::AwFuncCrosscheck,
        Suite::AwFuncSymmetries,
        Suite::NonsymFunc,
        Suite::WeightAssembly,
        Suite::FFunction,
        Suite::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::DahaRelations => "daha-relations",
            Suite::Automorphisms => "automorphisms",
            Suite::GaussianConjugation => "gaussian-conjugation",
            Suite::AwPolyIdentities => "aw-poly-identities",
            Suite::NonsymPolyIdentities => "nonsym-poly-identities",
            Suite::AwFuncCrosscheck => "aw-func-crosscheck",
            Suite::AwFuncSymmetries => "aw-func-symmetries",
            Suite::NonsymFunc => "nonsym-func",
            Suite::WeightAssembly => "appendix-a",
            Suite::FFunction => "appendix-b",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }

    /// The suites `self` stands for (`All` expands to every other suite).
    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::ALL[..10].to_vec(),
            s => vec![s],
        }
    }

    fn is_numeric(self) -> bool {
        matches!(
            self,
            Suite::AwFuncCrosscheck | Suite::AwFuncSymmetries | Suite::NonsymFunc | Suite::FFunction
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A user-supplied tuple.
#[derive(Clone, Debug)]
pub enum FixedParams {
    Exact(ParamSet<Rational>),
    Numeric(ParamSet<Cx>),
}

impl FixedParams {
    fn to_cx(&self, prec: u32) -> ParamSet<Cx> {
        match self {
            FixedParams::Exact(p) => p.convert(|x| Cx::from_rational(prec, x)),
            FixedParams::Numeric(p) => p.convert(|x| x.with_precision(prec)),
        }
    }

    /// Fails with the violated conditions when the tuple is not generic.
    pub fn validate(&self) -> Result<()> {
        let d = match self {
            FixedParams::Exact(p) => p.check_generic(GENERIC_KMAX, 0.0),
            FixedParams::Numeric(p) => p.check_generic(GENERIC_KMAX, 1e-12),
        };
        if d.all_pass() {
            return Ok(());
        }
        let why: Vec<String> = d.failures().map(|f| f.check.clone()).collect();
        Err(Error::DegenerateParams(format!("non-generic parameters: {}", why.join("; "))))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub params: Option<FixedParams>,
    pub samples: usize,
    pub seed: u64,
    pub digits: u32,
    /// Numeric tolerance; defaults to `10^-(digits-10)`.
    pub tol: Option<f64>,
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            params: None,
            samples: 20,
            seed: 7,
            digits: 50,
            tol: None,
            timings: false,
        }
    }
}

impl SuiteConfig {
    pub fn series(&self) -> SeriesConfig {
        SeriesConfig::with_digits(self.digits)
    }

    pub fn numeric_tol(&self) -> f64 {
        self.tol.unwrap_or_else(|| self.series().check_tol())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub check_id: String,
    /// The identity checked, as a formula.
    pub anchor: String,
    pub params: String,
    pub sample: usize,
    pub pass: bool,
    /// `null` when the check could not be evaluated.
    pub residual: Option<f64>,
    /// Wall time of the check group that produced the row; `null` unless
    /// timings are requested, so reports are reproducible byte for byte.
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

fn rows_from(checks: Vec<Check>, params: &str, sample: usize, ms: Option<u64>) -> Vec<ReportRow> {
    checks
        .into_iter()
        .map(|c| ReportRow {
            check_id: c.id,
            anchor: c.anchor,
            params: params.to_string(),
            sample,
            pass: c.pass,
            residual: c.residual.is_finite().then_some(c.residual),
            runtime_ms: ms,
        })
        .collect()
}

fn relations(prefix: &str, r: Result<Vec<crate::daha::RelationReport>>) -> Vec<Check> {
    match r {
        Ok(v) => v.iter().map(|x| Check::from_relation(prefix, x)).collect(),
        Err(e) => vec![Check::failed(&format!("{prefix}/evaluation"), prefix, &e.to_string())],
    }
}

/// Exact tuple for sample `i`, or the fixed tuple in either backend.
enum Tuple {
    Exact(ParamSet<Rational>),
    Numeric(ParamSet<Cx>),
}

impl Tuple {
    fn label(&self) -> String {
        match self {
            Tuple::Exact(p) => p.to_string(),
            Tuple::Numeric(p) => p.to_string(),
        }
    }
}

/// Runs `f` on whichever backend the tuple uses; exact tuples get tolerance 0.
macro_rules! on_tuple {
    ($t:expr, $tol:expr, |$p:ident, $tl:ident| $body:expr) => {
        match $t {
            Tuple::Exact($p) => {
                let $tl = 0.0;
                $body
            }
            Tuple::Numeric($p) => {
                let $tl = $tol;
                $body
            }
        }
    };
}

fn exact_tuple(cfg: &SuiteConfig, sample: usize, square: bool) -> Tuple {
    match &cfg.params {
        Some(FixedParams::Exact(p)) => Tuple::Exact(p.clone()),
        Some(FixedParams::Numeric(p)) => Tuple::Numeric(p.convert(|x| x.with_precision(cfg.series().prec()))),
        None if square => Tuple::Exact(exact_square(cfg.seed, sample as u64)),
        None => Tuple::Exact(exact_generic(cfg.seed, sample as u64)),
    }
}

fn numeric_point(cfg: &SuiteConfig, sample: usize) -> Result<AdmissiblePoint> {
    let series = cfg.series();
    match &cfg.params {
        Some(p) => admissible_point_for(&p.to_cx(series.prec()), cfg.seed, sample as u64, &series),
        None => admissible_sample(cfg.seed, sample as u64, &series),
    }
}

fn point_label(pt: &AdmissiblePoint) -> String {
    format!("{} gamma={} z={}", pt.p, pt.gamma, pt.z)
}

/// Order-192 orbit of `{t0hat, t2, t3, t4}`.
pub fn orbit_check<S: Field>(p: &ParamSet<S>) -> Check {
    let id = "automorphisms/orbit-order";
    let anchor = "|orbit of (a,b,c,d) under <t0hat, t2, t3, t4>| = 192";
    let gens = [ParamMapName::T0hat, ParamMapName::T2, ParamMapName::T3, ParamMapName::T4];
    match p.orbit(&gens, 10_000) {
        Ok(o) => Check::new(id, anchor, o.len() == 192, (o.len() as f64 - 192.0).abs()),
        Err(e) => Check::failed(id, anchor, &e.to_string()),
    }
}

fn exact_suite_checks(suite: Suite, t: &Tuple, cfg: &SuiteConfig, sample: usize) -> Vec<Check> {
    let tol = cfg.numeric_tol();
    let seed = cfg.seed.wrapping_add(sample as u64);
    on_tuple!(t, tol, |p, tl| match suite {
        Suite::DahaRelations => {
            let mut v = relations("daha", verify_daha_relations(p, tl));
            v.extend(relations("daha/spherical", verify_spherical(p, 5, seed, tl)));
            v
        }
        Suite::Automorphisms => {
            let mut v = Vec::new();
            for name in CHECKED_AUTOMORPHISMS {
                v.extend(relations(&format!("automorphisms/{name}"), verify_automorphism(name, p, tl)));
            }
            v.extend(relations("automorphisms/group", verify_group_relations(p, tl)));
            v.push(orbit_check(p));
            v
        }
        Suite::GaussianConjugation => relations("gaussian", verify_gaussian_conjugations(p, tl)),
        Suite::AwPolyIdentities => {
            let mut v = awpoly::symmetric_checks(p, tl);
            v.extend(awpoly::half_shift_checks(p, tl));
            v.push(awpoly::duality_check(p, tl));
            v
        }
        Suite::NonsymPolyIdentities => {
            let mut v = awpoly::nonsym_checks(p, tl);
            v.push(awpoly::nonsym_route_check(p, tl));
            v.push(awpoly::nonsym_duality_check(p, tl));
            v
        }
        Suite::WeightAssembly => fc::weight_assembly_checks(p, 10, tl),
        Suite::FFunction => {
            let mut v = fc::f_polynomial_checks(p, 5, tl);
            v.push(fc::y_on_antisymmetric_operator_check(p, 5, seed, tl));
            v
        }
        _ => Vec::new(),
    })
}

fn numeric_suite_checks(suite: Suite, pt: &AdmissiblePoint, cfg: &SuiteConfig, sample: usize) -> Vec<Check> {
    let series = cfg.series();
    let tol = cfg.numeric_tol();
    match suite {
        Suite::AwFuncCrosscheck => {
            let mut v = fc::cross_method_checks(pt, &series, tol);
            v.push(fc::evaluation_check(&pt.z, &pt.p, &series, tol));
            let q = Cx::from_rational(series.prec(), &crate::scalar::rat(2, 5));
            v.push(fc::inverse_gaussian_check(&pt.z, &pt.p.with_q(q), 60, &series, tol));
            v.extend(fc::jacobi_checks(&pt.z, &series, tol));
            if sample == 0 {
                v.push(fc::euler_check(&series));
            }
            v
        }
        Suite::AwFuncSymmetries => {
            let mut v = fc::symmetric_function_checks(pt, Method::Kernel, &series, tol);
            v.push(fc::regularity_check(pt, &series));
            v
        }
        Suite::NonsymFunc => fc::nonsym_function_checks(pt, &series, tol),
        Suite::FFunction => fc::f_function_checks(pt, &series, tol),
        _ => Vec::new(),
    }
}

/// One unit of work: a suite at one sample index.
fn run_unit(suite: Suite, sample: usize, cfg: &SuiteConfig) -> Vec<ReportRow> {
    let start = Instant::now();
    let ms = |rows: Vec<ReportRow>| -> Vec<ReportRow> {
        if !cfg.timings {
            return rows;
        }
        let t = start.elapsed().as_millis() as u64;
        rows.into_iter().map(|r| ReportRow { runtime_ms: Some(t), ..r }).collect()
    };
    let mut rows = Vec::new();
    let exact_kind = match suite {
        Suite::Automorphisms | Suite::AwPolyIdentities | Suite::NonsymPolyIdentities | Suite::FFunction => {
            Some(true)
        }
        Suite::DahaRelations | Suite::GaussianConjugation | Suite::WeightAssembly => Some(false),
        _ => None,
    };
    if let Some(square) = exact_kind {
        // exact parts run once for a fixed tuple
        if cfg.params.is_none() || sample == 0 {
            let t = exact_tuple(cfg, sample, square);
            rows.extend(rows_from(exact_suite_checks(suite, &t, cfg, sample), &t.label(), sample, None));
        }
    }
    if suite.is_numeric() {
        match numeric_point(cfg, sample) {
            Ok(pt) => rows.extend(rows_from(
                numeric_suite_checks(suite, &pt, cfg, sample),
                &point_label(&pt),
                sample,
                None,
            )),
            Err(e) => rows.extend(rows_from(
                vec![Check::failed(&format!("{suite}/sampling"), "admissible sample", &e.to_string())],
                "",
                sample,
                None,
            )),
        }
    }
    ms(rows)
}

/// Runs a suite. Samples are processed in parallel; the report order does
/// not depend on scheduling.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Report> {
    if let Some(p) = &cfg.params {
        p.validate()?;
    }
    if cfg.samples == 0 {
        return Err(Error::Parse("--samples must be positive".into()));
    }
    let units: Vec<(Suite, usize)> = suite
        .members()
        .into_iter()
        .flat_map(|s| (0..cfg.samples).map(move |i| (s, i)))
        .collect();
    let mut rows: Vec<ReportRow> = units
        .par_iter()
        .flat_map_iter(|(s, i)| {
            log::debug!("suite {s} sample {i}");
            run_unit(*s, *i, cfg)
        })
        .collect();
    rows.sort_by(|a, b| a.check_id.cmp(&b.check_id).then(a.sample.cmp(&b.sample)));
    Ok(Report {
        suite: suite.to_string(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.as_str()).unwrap(), s);
        }
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn weight_assembly_report_is_sorted_and_passes() {
        let cfg = SuiteConfig {
            samples: 3,
            ..SuiteConfig::default()
        };
        let r = run_suite(Suite::WeightAssembly, &cfg).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.rows.len(), 12);
        for w in r.rows.windows(2) {
            assert!((&w[0].check_id, w[0].sample) <= (&w[1].check_id, w[1].sample));
        }
        assert!(r.rows.iter().all(|x| x.runtime_ms.is_none()));
    }

    #[test]
    fn non_generic_fixed_tuple_is_rejected() {
        use crate::scalar::rat;
        let p = ParamSet::raw(rat(2, 1), rat(1, 2), rat(4, 1), rat(5, 1), rat(1, 3));
        let cfg = SuiteConfig {
            params: Some(FixedParams::Exact(p)),
            ..SuiteConfig::default()
        };
        assert!(matches!(run_suite(Suite::DahaRelations, &cfg), Err(Error::DegenerateParams(_))));
    }
}
