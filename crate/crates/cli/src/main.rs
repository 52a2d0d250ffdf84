use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use pisum::bigreal::PrecisionContext;
use pisum::catalog::{
    catalog, central_difference_check, combination_check, listing, verify_derivative, verify_param, verify_record,
    verify_transformation, TransformKind,
};
use pisum::error::{Error, Result};
use pisum::exact::{parse_rational, Rational, Var};
use pisum::report::{ReportDocument, VerificationReport};
use pisum::wz::{
    check_pair_relation, ddk_sum_check, derived_zero_series, eight_over_pi_report, g_matches_ra3, sum_g, sum_h, HForm,
    WzPair, ZeroSeries,
};

/// `println!` that ignores a closed stdout.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const MIN_DIGITS: u32 = 5;
const MAX_DIGITS: u32 = 2000;

#[derive(Parser)]
#[command(
    name = "pisum",
    version,
    about = "Verify harmonic-number series for 1/π to arbitrary precision"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Decimal digits to verify
    #[arg(long, default_value_t = 40)]
    digits: u32,
    /// Emit one JSON report document on stdout
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries
    List {
        #[arg(long)]
        json: bool,
    },
    /// Verify fixed catalog identities
    Verify {
        /// Identity id, e.g. thm-(3); repeatable
        #[arg(long = "id", required_unless_present = "all", conflicts_with = "all")]
        ids: Vec<String>,
        /// Verify every fixed identity
        #[arg(long)]
        all: bool,
        /// Cap on summed terms per series
        #[arg(long)]
        max_terms: Option<usize>,
        /// Concurrent verifications
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Verify a parametrized family at an exact rational parameter
    Param {
        #[arg(long)]
        id: String,
        #[command(flatten)]
        value: ParamValue,
        #[command(flatten)]
        out: Output,
    },
    /// Check the differentiated family against a central difference and its digamma right-hand side
    Deriv {
        #[arg(long)]
        id: String,
        #[arg(long)]
        at: String,
        #[command(flatten)]
        out: Output,
    },
    /// WZ pair certification and the sums built on it
    Wz {
        #[command(subcommand)]
        command: WzCommand,
    },
    /// Check a two-sided transformation or the 5F4 summation at rational parameters
    Transform {
        /// chu, chu14 or dougall
        #[arg(long)]
        kind: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: String,
        /// Unused by dougall
        #[arg(long, default_value = "0")]
        e: String,
        #[command(flatten)]
        out: Output,
    },
    /// Check the linear relations between catalog entries
    Combo {
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ParamValue {
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    e: Option<String>,
    /// Parameter value whatever the family's variable is called
    #[arg(long)]
    at: Option<String>,
}

#[derive(Subcommand)]
enum WzCommand {
    /// Identify the telescoping relation and check it exactly on a lattice
    Check {
        #[arg(long, default_value_t = 100)]
        nmax: u64,
        #[arg(long, default_value_t = 100)]
        kmax: u64,
        /// Coefficient of n in G (20 for the genuine pair)
        #[arg(long, default_value_t = 20)]
        g_coeff: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Sum G(n,k) over n and compare with 8/π
    Sum {
        #[arg(long, default_value_t = 0)]
        k: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Sum the H(n,k) combination over n and compare with 8/π
    H {
        #[arg(long, default_value_t = 0)]
        k: u64,
        /// Use F(n+1,n+k+1) instead of F(n+1,n+k)
        #[arg(long)]
        printed: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Sum a k-derivative zero series (h1 or t4)
    Zero {
        #[arg(long)]
        which: String,
        #[command(flatten)]
        out: Output,
    },
    /// Central difference in k of the G and H sums at k = 0
    Ddk {
        #[command(flatten)]
        out: Output,
    },
    /// Compare G(n,0) with the 8/π series terms
    Bridge {
        #[arg(long, default_value_t = 50)]
        nmax: u64,
        #[command(flatten)]
        out: Output,
    },
}

fn context(digits: u32) -> Result<PrecisionContext> {
    if digits > MAX_DIGITS {
        return Err(Error::ResourceLimit(format!(
            "--digits {digits} exceeds the desk-scale cap of {MAX_DIGITS}"
        )));
    }
    if digits < MIN_DIGITS {
        return Err(Error::Domain(format!(
            "--digits must be at least {MIN_DIGITS}, got {digits}"
        )));
    }
    Ok(PrecisionContext::new(digits))
}

fn parse_value(s: &str) -> Result<Rational> {
    parse_rational(s)
}

fn print_text(reports: &[VerificationReport]) {
    for r in reports {
        let status = if r.pass { "PASS" } else { "FAIL" };
        say!(
            "{status} {:<28} {:>4}/{:<4} digits  {:<18} {:>6} terms {:>7} ms",
            r.id,
            r.digits_matched,
            r.digits_requested,
            r.method,
            r.terms,
            r.ms
        );
        if !r.pass {
            say!("     anchor: {}", r.anchor);
            say!("     lhs:    {}", r.lhs);
            say!("     rhs:    {}", r.rhs);
        }
    }
}

/// Prints the reports and returns the exit code they imply.
fn emit(ctx: &PrecisionContext, reports: Vec<VerificationReport>, json: bool, started: Instant) -> ExitCode {
    let doc = ReportDocument::new(ctx, reports, started.elapsed());
    if json {
        say!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
    } else {
        print_text(&doc.reports);
        let passed = doc.reports.iter().filter(|r| r.pass).count();
        say!("{passed}/{} passed in {} ms", doc.reports.len(), doc.total_ms);
    }
    if doc.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    if e.is_usage() {
        ExitCode::from(2)
    } else {
        ExitCode::from(1)
    }
}

fn run_list(json: bool) -> ExitCode {
    let listing = listing();
    if json {
        say!(
            "{}",
            serde_json::to_string_pretty(&listing).expect("listing serializes")
        );
        return ExitCode::SUCCESS;
    }
    for e in &listing.entries {
        let param = e.parameter.as_deref().map(|p| format!("  [{p}]")).unwrap_or_default();
        say!("{:<14} {:<7} {}  =  {}{param}", e.id, e.kind, e.anchor, e.rhs);
    }
    say!();
    say!("commands: verify, param, deriv, transform, combo, wz check | wz sum | wz h | wz zero | wz ddk | wz bridge");
    ExitCode::SUCCESS
}

fn run_verify(ids: Vec<String>, all: bool, max_terms: Option<usize>, jobs: usize, out: Output) -> Result<ExitCode> {
    let started = Instant::now();
    let ctx = context(out.digits)?;
    let cat = catalog();
    let records = if all {
        cat.records.iter().collect::<Vec<_>>()
    } else {
        ids.iter().map(|id| cat.record(id)).collect::<Result<Vec<_>>>()?
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::ResourceLimit(format!("cannot start {jobs} workers: {e}")))?;
    let results: Vec<Result<VerificationReport>> = pool.install(|| {
        records
            .par_iter()
            .map(|rec| verify_record(rec, &ctx, out.digits, max_terms))
            .collect()
    });
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => errors.push(e),
        }
    }
    let code = emit(&ctx, reports, out.json, started);
    if let Some(e) = errors.first() {
        for e in &errors {
            eprintln!("error: {e}");
        }
        return Ok(if e.is_usage() {
            ExitCode::from(2)
        } else {
            ExitCode::from(1)
        });
    }
    Ok(code)
}

fn run_param(id: &str, value: ParamValue, out: Output) -> Result<ExitCode> {
    let started = Instant::now();
    let ctx = context(out.digits)?;
    let fam = catalog().family(id)?;
    let (var, text) = match (value.b, value.c, value.d, value.e, value.at) {
        (Some(t), ..) => (Some(Var::B), t),
        (_, Some(t), ..) => (Some(Var::C), t),
        (_, _, Some(t), ..) => (Some(Var::D), t),
        (_, _, _, Some(t), _) => (Some(Var::E), t),
        (.., Some(t)) => (None, t),
        _ => unreachable!("clap requires one parameter flag"),
    };
    if let Some(v) = var.filter(|v| *v != fam.var) {
        return Err(Error::Domain(format!(
            "family {id} is parametrized by {}, not {v}",
            fam.var
        )));
    }
    let p = parse_value(&text)?;
    let report = verify_param(id, &p, &ctx, out.digits)?;
    Ok(emit(&ctx, vec![report], out.json, started))
}

fn run_deriv(id: &str, at: &str, out: Output) -> Result<ExitCode> {
    let started = Instant::now();
    let ctx = context(out.digits)?;
    let p = parse_value(at)?;
    catalog().family(id)?.check_domain(&p)?;
    let central = central_difference_check(id, &p, &ctx)?;
    let analytic = verify_derivative(id, &p, &ctx, out.digits)?;
    Ok(emit(&ctx, vec![central, analytic], out.json, started))
}

fn run_wz(cmd: WzCommand) -> Result<ExitCode> {
    let started = Instant::now();
    let (out, reports) = match cmd {
        WzCommand::Check {
            nmax,
            kmax,
            g_coeff,
            out,
        } => {
            context(out.digits)?;
            let check = check_pair_relation(WzPair { g_coeff }, nmax, kmax)?;
            if !out.json {
                say!("identified convention: {}", check.convention);
            }
            (out, vec![check.report(out.digits, started.elapsed())])
        }
        WzCommand::Sum { k, out } => {
            let ctx = context(out.digits)?;
            let s = sum_g(k, &ctx, out.digits)?;
            let id = format!("sum_n G(n,{k})");
            (
                out,
                vec![eight_over_pi_report(&id, &s, &ctx, out.digits, started.elapsed())],
            )
        }
        WzCommand::H { k, printed, out } => {
            let ctx = context(out.digits)?;
            let (form, id) = if printed {
                (HForm::Printed, format!("sum_n F(n+1,n+{})+G(n,n+{k})", k + 1))
            } else {
                (HForm::Telescoped, format!("sum_n F(n+1,n+{k})+G(n,n+{k})"))
            };
            let s = sum_h(form, k, &ctx, out.digits)?;
            (
                out,
                vec![eight_over_pi_report(&id, &s, &ctx, out.digits, started.elapsed())],
            )
        }
        WzCommand::Zero { which, out } => {
            let ctx = context(out.digits)?;
            let which: ZeroSeries = which.parse()?;
            (out, derived_zero_series(which, &ctx, out.digits)?)
        }
        WzCommand::Ddk { out } => {
            let ctx = context(out.digits)?;
            (out, ddk_sum_check(&ctx)?)
        }
        WzCommand::Bridge { nmax, out } => {
            context(out.digits)?;
            (out, vec![g_matches_ra3(nmax, out.digits)?])
        }
    };
    let ctx = context(out.digits)?;
    Ok(emit(&ctx, reports, out.json, started))
}

#[allow(clippy::too_many_arguments)]
fn run_transform(kind: &str, a: &str, b: &str, c: &str, d: &str, e: &str, out: Output) -> Result<ExitCode> {
    let started = Instant::now();
    let ctx = context(out.digits)?;
    let kind: TransformKind = kind.parse()?;
    let [a, b, c, d, e] = [a, b, c, d, e].map(parse_value);
    let report = verify_transformation(kind, &a?, &b?, &c?, &d?, &e?, &ctx, out.digits)?;
    Ok(emit(&ctx, vec![report], out.json, started))
}

fn run_combo(out: Output) -> Result<ExitCode> {
    let started = Instant::now();
    let ctx = context(out.digits)?;
    let reports = combination_check(&ctx, out.digits)?;
    Ok(emit(&ctx, reports, out.json, started))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::List { json } => Ok(run_list(json)),
        Command::Verify {
            ids,
            all,
            max_terms,
            jobs,
            out,
        } => run_verify(ids, all, max_terms, jobs, out),
        Command::Param { id, value, out } => run_param(&id, value, out),
        Command::Deriv { id, at, out } => run_deriv(&id, &at, out),
        Command::Wz { command } => run_wz(command),
        Command::Transform {
            kind,
            a,
            b,
            c,
            d,
            e,
            out,
        } => run_transform(&kind, &a, &b, &c, &d, &e, out),
        Command::Combo { out } => run_combo(out),
    };
    result.unwrap_or_else(|e| fail(&e))
}
