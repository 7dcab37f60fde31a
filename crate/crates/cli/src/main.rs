mod eval;
mod input;
mod table;

use std::io::Write;
use std::process::ExitCode;

use awdaha::suites::{run_suite, Report, Suite, SuiteConfig};
use awdaha::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "awdaha", version, about = "Askey-Wilson DAHA evaluation and verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Evaluate a function or polynomial at one point.
    Eval(EvalArgs),
    /// Emit a table.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// Options shared by every subcommand.
#[derive(Args, Clone, Debug)]
pub struct Common {
    /// `a,b,c,d`: rationals (`p/q`), decimals, or `r-square` for `d`.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Base `q` (default 1/3 when `--params` is given).
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Working precision in decimal digits.
    #[arg(long, default_value_t = 50)]
    pub digits: u32,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Record per-group wall time in `runtime_ms`.
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Eplus, E, F, phi, Eplus_poly, nonsym_poly or kernel_coeff.
    #[arg(long = "fn")]
    pub func: String,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// Evaluation method (w87, sum4phi3, suslov, kernel; ns-kernel,
    /// ns-decomp[:method] for `E`).
    #[arg(long)]
    pub method: Option<String>,
    /// `sym` or `nonsym` for kernel_coeff.
    #[arg(long, default_value = "sym")]
    pub which: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args)]
pub struct TableArgs {
    /// kernel-coefficients, poly-coeffs or orbit.
    pub kind: String,
    /// Index range `lo..hi` (inclusive) or a single index.
    #[arg(long, default_value = "0..10")]
    pub m: String,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// Polynomial (`plus`, `p`, `nonsym`) or generator list for `orbit`.
    #[arg(long)]
    pub which: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

pub fn emit(out: &Option<std::path::PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut h = std::io::stdout().lock();
            h.write_all(text.as_bytes())?;
            h.flush()?;
        }
    }
    Ok(())
}

fn render_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
        Format::Text | Format::Csv => {
            let mut s = String::new();
            for row in &r.rows {
                let res = row.residual.map_or("n/a".to_string(), |x| format!("{x:.3e}"));
                let ms = row.runtime_ms.map_or(String::new(), |t| format!(" {t}ms"));
                s += &format!(
                    "{} {} [{}] residual={}{}\n    {}\n",
                    if row.pass { "PASS" } else { "FAIL" },
                    row.check_id,
                    row.sample,
                    res,
                    ms,
                    row.anchor
                );
            }
            let failed = r.failures().count();
            s += &format!("{}: {} checks, {} failed\n", r.suite, r.rows.len(), failed);
            s
        }
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let config = || -> Result<(Suite, SuiteConfig), Error> {
        let suite = Suite::parse(&args.suite)?;
        let params = input::fixed_params(&args.common)?;
        Ok((
            suite,
            SuiteConfig {
                params,
                samples: args.samples,
                seed: args.common.seed,
                digits: args.common.digits,
                tol: args.common.tol,
                timings: args.timings,
            },
        ))
    };
    let (suite, cfg) = match config() {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_suite(suite, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&args.common.out, &render_report(&report, args.common.format)) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Cmd::Verify(a) => verify(a),
        Cmd::Eval(a) => eval::run(a),
        Cmd::Table(a) => table::run(a),
    }
}
