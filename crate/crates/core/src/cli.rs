//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a reproduction entry, scenario check or
//! dominance comparison failed, 2 usage or input error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{bound_report, extremal_report, BoundReport};
use crate::expr::{parse_growth, GrowthExpr};
use crate::lemma::{
    build_cover_from_scan, measure_bound, scan_violations_with, ScanOptions, ScanReport, VariantKind, VariantSpec,
    DEFAULT_GRID, DEFAULT_TOL,
};
use crate::repro::{example6_scenario, reproduce_all, Constants};
use crate::specfun::{
    check_digits, hurwitz_zeta, riemann_zeta, tower_constant_se, zeta_gap_quadrature, Enclosure, DEFAULT_DIGITS,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "borel-lab",
    version,
    about = "Certified constants, exceptional sets and bound checks for Borel-type growth lemmas"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Decimal digits for certified evaluations
    #[arg(long, global = true, env = "BOREL_LAB_DIGITS", default_value_t = DEFAULT_DIGITS)]
    digits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Riemann zeta ζ(s), s > 1
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
    },
    /// Hurwitz zeta ζ(s, a), s > 1, a > 0
    Hurwitz {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
    },
    /// γ(s) − ζ(s) by direct quadrature
    Gap {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
    },
    /// S_e = Σ 1/a_n over the exponential tower, and S_e(4)
    SeConstant,
    /// Scan for the exceptional set of a variant
    ExceptionalSet(ScanArgs),
    /// Build the interval cover of the exceptional set
    Cover {
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
    },
    /// Compare the error term against each variant's bound
    BoundsCompare {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        /// Value of T(r); the error term is then taken at its worst case T(R) = φ(t)
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        /// Adds the fernandez-arias row
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<f64>,
        /// Growth function to evaluate instead of --t
        #[arg(long = "T")]
        growth: Option<String>,
    },
    /// The T(r) = e^{d(r − r0)} scenario with the HanLiu s = 2 cover
    Example6 {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        r0: f64,
        /// r0′ − r0 (defaults to the largest admissible value)
        #[arg(long, allow_hyphen_values = true, conflicts_with = "d")]
        gap: Option<f64>,
        /// Growth rate; sets gap = 2 ln(√2+1)/d
        #[arg(long, allow_hyphen_values = true)]
        d: Option<f64>,
    },
    /// Recompute every stored claim
    Reproduce,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Growth function T(r), e.g. "exp(r)"
    #[arg(long = "T")]
    growth: String,
    #[arg(long)]
    variant: String,
    /// Variant parameter (not used by fernandez-arias)
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    r0: f64,
    #[arg(long, allow_hyphen_values = true)]
    rmax: f64,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// For fernandez-arias: scan T^sigma instead of T
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
}

enum Failure {
    /// Bad input; exit 2.
    Usage(String),
    /// Ran fine but a check failed; exit 1. The report is already written.
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`cli_main`] with explicit output streams.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Check) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult {
    check_digits(cli.digits)?;
    let (fmt, digits) = (cli.format, cli.digits);
    match &cli.command {
        Command::Zeta { s } => emit_enclosure(out, fmt, &riemann_zeta(*s, digits)?),
        Command::Hurwitz { s, a } => emit_enclosure(out, fmt, &hurwitz_zeta(*s, *a, digits)?),
        Command::Gap { s } => emit_enclosure(out, fmt, &zeta_gap_quadrature(*s, digits)?),
        Command::SeConstant => se_constant(out, fmt, digits),
        Command::ExceptionalSet(args) => exceptional_set(out, fmt, digits, args),
        Command::Cover { scan, max_steps } => cover(out, fmt, digits, scan, *max_steps),
        Command::BoundsCompare { s, t, r, sigma, growth } => {
            bounds_compare(out, fmt, *s, *t, *r, *sigma, growth.as_deref())
        }
        Command::Example6 { r0, gap, d } => example6(out, fmt, digits, *r0, *gap, *d),
        Command::Reproduce => reproduce(out, fmt, digits),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn write_csv<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> CliResult {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    out.write_all(&bytes)?;
    Ok(())
}

fn emit_enclosure(out: &mut dyn Write, fmt: Format, e: &Enclosure) -> CliResult {
    let j = e.to_json();
    match fmt {
        Format::Json => write_json(out, &j),
        Format::Csv => write_csv(out, &[j]),
    }
}

#[derive(Serialize)]
struct NamedEnclosure {
    name: &'static str,
    lo: String,
    hi: String,
    digits: u32,
}

fn named(name: &'static str, e: &Enclosure) -> NamedEnclosure {
    NamedEnclosure {
        name,
        lo: e.lo_decimal(),
        hi: e.hi_decimal(),
        digits: e.digits(),
    }
}

fn se_constant(out: &mut dyn Write, fmt: Format, digits: u32) -> CliResult {
    let tc = tower_constant_se(digits)?;
    match fmt {
        Format::Json => write_json(
            out,
            &json!({
                "se": tc.se.to_json(),
                "se4": tc.se4.to_json(),
                "a4_reciprocal_log10_upper": tc.a4_reciprocal_log10,
                "tail_log10_upper": tc.tail_log10,
            }),
        ),
        Format::Csv => write_csv(out, &[named("se", &tc.se), named("se4", &tc.se4)]),
    }
}

fn variant_from(args: &ScanArgs) -> Result<VariantSpec, Failure> {
    let kind: VariantKind = args.variant.parse()?;
    if kind == VariantKind::FernandezArias {
        if args.s.is_some() {
            return Err(Failure::Usage("--s does not apply to fernandez-arias".into()));
        }
        return Ok(VariantSpec::fernandez_arias());
    }
    if args.sigma.is_some() {
        return Err(Failure::Usage("--sigma applies only to fernandez-arias".into()));
    }
    let s = args
        .s
        .ok_or_else(|| Failure::Usage(format!("--s is required for {kind}")))?;
    Ok(VariantSpec::new(kind, s)?)
}

fn growth_from(args: &ScanArgs) -> Result<GrowthExpr, Failure> {
    let t = parse_growth(&args.growth)?;
    match args.sigma {
        None => Ok(t),
        Some(sigma) if sigma > 0.0 && sigma < 1.0 => Ok(t.powf(sigma)),
        Some(sigma) => Err(Failure::Usage(format!("sigma = {sigma} must lie in (0, 1)"))),
    }
}

fn run_scan(args: &ScanArgs) -> Result<(GrowthExpr, VariantSpec, ScanReport), Failure> {
    let v = variant_from(args)?;
    let t = growth_from(args)?;
    let opts = ScanOptions {
        grid: args.grid,
        tol: args.tol,
    };
    let scan = scan_violations_with(&t, &v, args.r0, args.rmax, opts)?;
    Ok((t, v, scan))
}

#[derive(Serialize)]
struct IntervalRow {
    lo: f64,
    hi: f64,
}

fn exceptional_set(out: &mut dyn Write, fmt: Format, digits: u32, args: &ScanArgs) -> CliResult {
    let (t, v, scan) = run_scan(args)?;
    let bound = measure_bound(&v, None, digits)?;
    let start_bound = measure_bound(&v, Some(scan.t_at_r0), digits)?;
    match fmt {
        Format::Json => write_json(
            out,
            &json!({
                "T": t.to_string(),
                "variant": v.kind,
                "s": if v.s.is_nan() { None } else { Some(v.s) },
                "sigma": args.sigma,
                "r0": scan.r0,
                "rmax": scan.r_max,
                "grid": scan.grid,
                "tol": scan.tol,
                "intervals": scan.set.intervals(),
                "measure": scan.measure(),
                "measure_bound": bound.to_json(),
                "measure_bound_from_r0": start_bound.to_json(),
                "within_bound": scan.measure() <= start_bound.hi_f64(),
                "warnings": scan.warnings,
            }),
        ),
        Format::Csv => {
            let rows: Vec<IntervalRow> = scan
                .set
                .intervals()
                .iter()
                .map(|&(lo, hi)| IntervalRow { lo, hi })
                .collect();
            write_csv(out, &rows)
        }
    }
}

#[derive(Serialize)]
struct CoverRow {
    j: usize,
    r: f64,
    r_prime: f64,
    length: f64,
    certified_length_bound: f64,
}

fn cover(out: &mut dyn Write, fmt: Format, digits: u32, args: &ScanArgs, max_steps: usize) -> CliResult {
    let (t, v, scan) = run_scan(args)?;
    let c = build_cover_from_scan(&t, &v, &scan, max_steps)?;
    let (total, slack) = c.chain_total(&v, digits)?;
    let ok = c.as_set().covers(&scan.set, 0.0) && c.steps_within_bounds() && c.is_interleaved();
    match fmt {
        Format::Json => write_json(
            out,
            &json!({
                "T": t.to_string(),
                "variant": v.kind,
                "s": if v.s.is_nan() { None } else { Some(v.s) },
                "r0": c.r0,
                "rmax": c.r_max,
                "t_at_r0": c.t_at_r0,
                "steps": c.steps,
                "exhausted": c.exhausted,
                "chain_sum": c.chain_sum,
                "chain_total": total.to_json(),
                "chain_slack": slack,
                "covers_scan": c.as_set().covers(&scan.set, 0.0),
                "steps_within_bounds": c.steps_within_bounds(),
                "warnings": c.warnings.iter().chain(&scan.warnings).collect::<Vec<_>>(),
            }),
        )?,
        Format::Csv => {
            let rows: Vec<CoverRow> = c
                .steps
                .iter()
                .enumerate()
                .map(|(i, s)| CoverRow {
                    j: i + 1,
                    r: s.r,
                    r_prime: s.r_prime,
                    length: s.length(),
                    certified_length_bound: s.certified_length_bound,
                })
                .collect();
            write_csv(out, &rows)?;
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

#[derive(Serialize)]
struct CompareRow {
    variant: VariantKind,
    lhs: f64,
    bound: f64,
    dominated: bool,
}

fn bounds_compare(
    out: &mut dyn Write,
    fmt: Format,
    s: f64,
    t: Option<f64>,
    r: f64,
    sigma: Option<f64>,
    growth: Option<&str>,
) -> CliResult {
    let growth = growth.map(parse_growth).transpose()?;
    if growth.is_some() == t.is_some() {
        return Err(Failure::Usage("give exactly one of --t and --T".into()));
    }
    let mut variants = Vec::new();
    for kind in [
        VariantKind::Borel,
        VariantKind::Nevanlinna,
        VariantKind::Hayman,
        VariantKind::HanLiu,
    ] {
        variants.push(VariantSpec::new(kind, s)?);
    }
    if sigma.is_some() {
        variants.push(VariantSpec::fernandez_arias());
    }
    let mut reports: Vec<BoundReport> = Vec::new();
    for v in &variants {
        let rep = match (&growth, t) {
            (Some(g), _) => bound_report(g, v, r, sigma)?,
            (None, Some(t)) => extremal_report(v, t, r, sigma)?,
            (None, None) => unreachable!(),
        };
        reports.push(rep);
    }
    match fmt {
        Format::Json => write_json(out, &reports)?,
        Format::Csv => {
            let rows: Vec<CompareRow> = reports
                .iter()
                .map(|b| CompareRow {
                    variant: b.variant,
                    lhs: b.lhs_eq4,
                    bound: b.bound_value,
                    dominated: b.dominated,
                })
                .collect();
            write_csv(out, &rows)?;
        }
    }
    if reports.iter().all(|b| b.dominated) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn example6(out: &mut dyn Write, fmt: Format, digits: u32, r0: f64, gap: Option<f64>, d: Option<f64>) -> CliResult {
    let gap = match (gap, d) {
        (Some(g), _) => g,
        (None, Some(d)) if d > 0.0 => 2.0 * (2f64.sqrt() + 1.0).ln() / d,
        (None, Some(d)) => return Err(Failure::Usage(format!("d = {d} must be positive"))),
        (None, None) => Constants::compute(digits)?.max_gap(),
    };
    let rep = example6_scenario(r0, gap, digits)?;
    match fmt {
        Format::Json => write_json(out, &rep)?,
        Format::Csv => write_csv(out, &rep.checks)?,
    }
    if rep.all_pass() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn reproduce(out: &mut dyn Write, fmt: Format, digits: u32) -> CliResult {
    let rep = reproduce_all(digits)?;
    match fmt {
        Format::Json => writeln!(out, "{}", rep.to_json())?,
        Format::Csv => write!(out, "{}", rep.to_csv())?,
    }
    if rep.all_pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
