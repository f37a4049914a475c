use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rug::Float;
use serde::Serialize;
use thetaval::catalog::{catalog, find_entry};
use thetaval::hyperg::{euler_integral_eval, pfq_at_one_with, pfq_series, EvalMethod, HypEvalRecord};
use thetaval::lvalue::{verify_entry, verify_remark, LValueRecord, LValueReport};
use thetaval::rational::{fmt_rational, parse_rational, parse_rational_list};
use thetaval::special::gamma_rational;
use thetaval::suites::{exact_suites, numeric_suites, ExactSuiteResult, NumericSuiteResult};
use thetaval::theta::form_qexp;
use thetaval::{Error, HypParams, PrecisionContext};

const MIN_DIGITS: u32 = 10;
const MIN_ORDER: usize = 8;

#[derive(Parser)]
#[command(name = "thetaval", version, about = "Verify L(f,1) closed forms for weight-3 theta products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare Mellin values with the table constants.
    Verify(VerifyArgs),
    /// Run the exact q-series and randomized numeric identity suites.
    Identities(IdentityArgs),
    /// Print the exact q-expansion of a catalog form.
    Qexp(QexpArgs),
    /// Evaluate a generalized hypergeometric function.
    Hyp(HypArgs),
    /// Evaluate Γ at a positive rational.
    Gamma(GammaArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Integral,
    Series,
    Closed,
}

impl From<MethodArg> for EvalMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => EvalMethod::Auto,
            MethodArg::Integral => EvalMethod::Integral,
            MethodArg::Series => EvalMethod::Series,
            MethodArg::Closed => EvalMethod::ClosedForm,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Target decimal digits.
    #[arg(long, default_value_t = 30)]
    digits: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Entry ids such as T1.xiii or remark; repeat or comma-separate. Default: all.
    #[arg(long = "entry", value_delimiter = ',')]
    entries: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct IdentityArgs {
    /// Truncation order of the exact suites.
    #[arg(long, default_value_t = 2000)]
    order: usize,
    /// Seed of the randomized suites.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct QexpArgs {
    #[arg(long)]
    entry: String,
    #[arg(long, default_value_t = 20)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct HypArgs {
    /// Upper parameters, e.g. 1/2,1/2.
    #[arg(long, allow_hyphen_values = true)]
    upper: String,
    /// Lower parameters, e.g. 3/2.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    lower: String,
    /// Argument, rational or decimal, in [0, 1].
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    z: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct GammaArgs {
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, default_value_t = 30)]
    digits: u32,
}

/// Failure carrying its exit status.
struct Fail {
    code: u8,
    message: String,
}

impl Fail {
    fn usage(message: impl Into<String>) -> Self {
        Fail { code: 2, message: message.into() }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Precision(_) | Error::OrderEscalation { .. } => 1,
            _ => 2,
        };
        Fail { code, message: e.to_string() }
    }
}

type CmdResult = Result<bool, Fail>;

fn context(digits: u32) -> Result<PrecisionContext, Fail> {
    if digits < MIN_DIGITS {
        return Err(Fail::usage(format!("--digits must be at least {MIN_DIGITS}")));
    }
    Ok(PrecisionContext::with_target(digits))
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let ctx = context(args.common.digits)?;
    let mut ids: Vec<String> = Vec::new();
    if args.entries.is_empty() {
        ids.extend(catalog().iter().map(|e| e.id.to_string()));
        ids.push("remark".into());
    } else {
        for raw in &args.entries {
            if raw.eq_ignore_ascii_case("remark") {
                ids.push("remark".into());
            } else {
                ids.push(find_entry(raw)?.id.to_string());
            }
        }
        ids.dedup();
    }
    let mut reports = ids
        .par_iter()
        .map(|id| {
            if id == "remark" {
                verify_remark(&ctx)
            } else {
                verify_entry(&find_entry(id)?, &ctx)
            }
        })
        .collect::<thetaval::Result<Vec<LValueReport>>>()?;
    reports.sort_by(|a, b| a.entry_id.cmp(&b.entry_id));

    let digits = ctx.target_digits as usize;
    let records: Vec<LValueRecord> = reports.iter().map(|r| r.record(digits)).collect();
    let passed = records.iter().filter(|r| r.pass).count();
    match args.common.format {
        Format::Json => print_json(&records),
        Format::Table => {
            let w = digits + 4;
            println!("{:<8} {:<w$} {:<w$} {:>6}  result", "id", "lhs", "rhs", "digits");
            for r in &records {
                println!("{:<8} {:<w$} {:<w$} {:>6}  {}", r.id, r.lhs, r.rhs, r.agreed_digits, mark(r.pass));
            }
            println!("{passed}/{} entries pass at {} digits", records.len(), ctx.target_digits);
        }
    }
    Ok(passed == records.len())
}

#[derive(Serialize)]
struct IdentityReport {
    exact: Vec<ExactSuiteResult>,
    numeric: Vec<NumericSuiteResult>,
}

fn cmd_identities(args: &IdentityArgs) -> CmdResult {
    let ctx = context(args.common.digits)?;
    if args.order < MIN_ORDER {
        return Err(Fail::usage(format!("--order must be at least {MIN_ORDER}")));
    }
    let exact = exact_suites(args.order)?;
    let numeric = numeric_suites(args.seed, &ctx);
    let pass = exact.iter().all(|s| s.pass) && numeric.iter().all(|s| s.pass());
    match args.common.format {
        Format::Json => print_json(&IdentityReport { exact, numeric }),
        Format::Table => {
            for s in &exact {
                println!("{:<24} order {:<6} {}", s.name, s.order, mark(s.pass));
            }
            for s in &numeric {
                let worst = if s.worst_digits > 1000 { "exact".to_string() } else { s.worst_digits.to_string() };
                println!(
                    "{:<24} {:>3}/{:<3} worst {:>5} need {:>3}  {}",
                    s.name,
                    s.passed,
                    s.cases,
                    worst,
                    s.required_digits,
                    mark(s.pass())
                );
                if let Some(f) = &s.failure {
                    println!("    first failure: {f}");
                }
            }
        }
    }
    Ok(pass)
}

#[derive(Serialize)]
struct QexpReport {
    id: String,
    order: usize,
    coefficients: Vec<(String, String)>,
}

fn cmd_qexp(args: &QexpArgs) -> CmdResult {
    let entry = find_entry(&args.entry)?;
    if args.order == 0 {
        return Err(Fail::usage("--order must be positive"));
    }
    let series = form_qexp(&entry.form, &rug::Rational::from(args.order as u64));
    match args.format {
        Format::Json => print_json(&QexpReport {
            id: entry.id.to_string(),
            order: args.order,
            coefficients: series.terms().iter().map(|(e, c)| (fmt_rational(e), fmt_rational(c))).collect(),
        }),
        Format::Table => println!("{series}"),
    }
    Ok(true)
}

fn cmd_hyp(args: &HypArgs) -> CmdResult {
    let ctx = context(args.common.digits)?;
    let p = HypParams::new(parse_rational_list(&args.upper)?, parse_rational_list(&args.lower)?)?;
    let z = parse_rational(&args.z)?;
    let zf = Float::with_val(ctx.bits(), &z);
    let report = if z == 1 {
        pfq_at_one_with(&p, args.method.into(), &ctx)?
    } else {
        match args.method {
            MethodArg::Auto | MethodArg::Series => pfq_series(&p, &zf, &ctx)?,
            MethodArg::Integral => euler_integral_eval(&p, &zf, &ctx)?,
            MethodArg::Closed => return Err(Fail::usage("closed-form summation applies only at z = 1")),
        }
    };
    let record = HypEvalRecord::new(&p, &fmt_rational(&z), &report, ctx.target_digits as usize);
    match args.common.format {
        Format::Json => print_json(&record),
        Format::Table => {
            println!("{}", record.value);
            eprintln!("{} at z = {}: {} ({} terms/nodes, tail bound {})", record.params, record.z, record.method, record.terms_or_nodes, record.tail_bound);
        }
    }
    Ok(true)
}

fn cmd_gamma(args: &GammaArgs) -> CmdResult {
    let ctx = context(args.digits)?;
    let x = parse_rational(&args.x)?;
    let v = gamma_rational(&x, &ctx)?;
    println!("{}", v.to_decimal(ctx.target_digits as usize));
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Identities(a) => cmd_identities(a),
        Command::Qexp(a) => cmd_qexp(a),
        Command::Hyp(a) => cmd_hyp(a),
        Command::Gamma(a) => cmd_gamma(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
