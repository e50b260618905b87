//! Command-line front end. Five subcommands: `analyze` a reducible exponent
//! pair, `irreducible` for a single component, `catalog` to enumerate every
//! admissible code over a field, `verify-lemmas` to run the lemma battery,
//! and `probe-conjecture` to search the wider coset-pair space.
//!
//! Exit codes: 0 when every requested check passes, 1 when a hypothesis
//! check or a brute-force verification fails, 2 for parameter and usage
//! errors (including enumeration budgets being exceeded).

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog::{
    count_formula, enumerate_catalog, lemma_battery, probe_conjecture, verify_entry, CatalogEntry,
    ProbeReport,
};
use crate::code::{
    weight_distribution_bruteforce_with_budget, weight_support_sample, CodeSpec,
    WeightDistribution, WeightEntry, DEFAULT_ENUMERATION_BUDGET,
};
use crate::error::{Error, Result};
use crate::field::{build_field, FieldCtx, FieldParams};
use crate::num::{gcd, prime_power, rem_euclid_u64};
use crate::theorems::{
    check_conditions, minus_one_is_power_of_p, table1_from_lambda, table2_closed, CheckEntry,
};

#[derive(Parser)]
#[command(
    name = "cyclocode",
    about = "Construct and verify reducible cyclic codes built from two semiprimitive components",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check an exponent pair, derive the seven-weight closed form, and
    /// optionally verify it by exhaustive enumeration.
    Analyze(AnalyzeArgs),
    /// Same for a single irreducible component (two weights).
    Irreducible(IrreducibleArgs),
    /// Enumerate every admissible code over F_{q^k} and compare the count
    /// against the closed counting formula.
    Catalog(CatalogArgs),
    /// Run the full lemma battery for one field.
    VerifyLemmas(VerifyLemmasArgs),
    /// Search all pairs of distinct cyclotomic cosets for codes matching the
    /// seven-weight shape, and compare the finds with the catalog.
    ProbeConjecture(ProbeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct FieldArgs {
    /// Subfield size q = p^t (odd prime power)
    #[arg(long)]
    q: u64,
    /// Extension degree k
    #[arg(long)]
    k: u32,
    /// Override the field modulus: comma-separated base-p coefficients,
    /// constant term first, degree t*k monic (e.g. "3,1,1")
    #[arg(long)]
    field_poly: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct EnumArgs {
    /// Verify the closed form by exhaustive enumeration
    #[arg(long)]
    verify: bool,
    /// Message pairs allowed during enumeration
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: u128,
    /// Worker threads for enumeration (0 = automatic, or CYCLOCODE_THREADS)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Sample this many random codewords and check each weight lies in the
    /// closed-form support
    #[arg(long, default_value_t = 0)]
    sample: u64,
    /// Seed for the sampling generator
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// First exponent
    #[arg(long, allow_hyphen_values = true)]
    a1: i64,
    /// Second exponent
    #[arg(long, allow_hyphen_values = true)]
    a2: i64,
    #[command(flatten)]
    enumeration: EnumArgs,
}

#[derive(Args)]
struct IrreducibleArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Component exponent
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[command(flatten)]
    enumeration: EnumArgs,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Brute-force verify every catalog entry
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: u128,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct VerifyLemmasArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Exponent multiplier used by the partition (must not be divisible by 3)
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    sigma: i64,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Total enumeration steps allowed across all coset pairs
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: u128,
}

/// The one report shape shared by analyze, irreducible, and verify-lemmas.
#[derive(serde::Serialize)]
struct Report {
    params: FieldParams,
    conditions: Vec<CheckEntry>,
    derived: Option<Derived>,
    closed_form: Vec<WeightEntry>,
    brute_force: Option<Vec<WeightEntry>>,
    verified: Option<bool>,
}

#[derive(serde::Serialize)]
struct Derived {
    n: u64,
    a: u64,
    lambda: u64,
    epsilon: Option<u8>,
}

#[derive(serde::Serialize)]
struct CatalogOut {
    params: FieldParams,
    count_formula: u64,
    count_enumerated: u64,
    entries: Vec<CatalogEntry>,
}

#[derive(serde::Serialize)]
struct ProbeOut {
    params: FieldParams,
    report: ProbeReport,
}

pub fn run_cli<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let mut stdout = std::io::stdout();
    run_cli_to(argv, &mut stdout)
}

/// Same as `run_cli` but writing program output to the given writer, so
/// tests can capture it. clap's own messages (usage errors, --help) keep
/// their usual streams.
pub fn run_cli_to<I, S, W>(argv: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
    W: Write,
{
    let full = std::iter::once(OsString::from("cyclocode"))
        .chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(full) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.cmd {
        Cmd::Analyze(args) => cmd_analyze(&args, out),
        Cmd::Irreducible(args) => cmd_irreducible(&args, out),
        Cmd::Catalog(args) => cmd_catalog(&args, out),
        Cmd::VerifyLemmas(args) => cmd_verify_lemmas(&args, out),
        Cmd::ProbeConjecture(args) => cmd_probe(&args, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    }
}

/// Every subcommand works over odd q only; reject even prime powers (and
/// non prime powers) before any report machinery runs.
fn validate_q(q: u64) -> Result<()> {
    match prime_power(q) {
        Some((2, _)) => Err(Error::InvalidParameter(format!(
            "q = {} is even; this construction needs an odd prime power",
            q
        ))),
        Some(_) => Ok(()),
        None => Err(Error::InvalidParameter(format!(
            "q = {} is not a prime power",
            q
        ))),
    }
}

fn parse_field_poly(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidParameter(format!("bad field-poly coefficient '{}'", part)))
        })
        .collect()
}

fn build_ctx(params: &FieldParams, field_poly: Option<&str>) -> Result<FieldCtx> {
    let coeffs = field_poly.map(parse_field_poly).transpose()?;
    build_field(params.p, params.t, params.k, coeffs.as_deref())
}

fn resolve_threads(flag: usize) -> usize {
    if flag != 0 {
        return flag;
    }
    std::env::var("CYCLOCODE_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0)
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        Ok(f())
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {}", e)))?;
        Ok(pool.install(f))
    }
}

/// Runs enumeration-backed verification and sampling for a spec whose
/// hypothesis checks all passed, mutating the report and the exit code.
fn enumeration_phase(
    ctx: &FieldCtx,
    spec: &CodeSpec,
    closed: &WeightDistribution,
    args: &EnumArgs,
    report: &mut Report,
    exit: &mut i32,
) -> Result<()> {
    if args.verify {
        let threads = resolve_threads(args.threads);
        let brute =
            with_threads(threads, || weight_distribution_bruteforce_with_budget(ctx, spec, args.budget))??;
        let ok = brute == *closed;
        report.brute_force = Some(brute.entries.clone());
        report.verified = Some(ok);
        if !ok {
            *exit = 1;
        }
    }
    if args.sample > 0 {
        let support: BTreeSet<u64> = closed.weights().into_iter().collect();
        let sampled = weight_support_sample(ctx, spec, args.sample, args.seed);
        let ok = sampled.iter().all(|w| support.contains(w));
        report
            .conditions
            .push(CheckEntry::boolean("sampled_weights_in_closed_form_support", ok));
        if !ok {
            *exit = 1;
        }
    }
    Ok(())
}

fn cmd_analyze(args: &AnalyzeArgs, out: &mut impl Write) -> Result<i32> {
    validate_q(args.field.q)?;
    let cond = check_conditions(args.field.q, args.field.k, args.a1, args.a2)?;
    let mut report = Report {
        params: cond.params,
        conditions: cond.checks.clone(),
        derived: None,
        closed_form: Vec::new(),
        brute_force: None,
        verified: None,
    };
    let mut exit = if cond.all_pass() { 0 } else { 1 };
    if cond.all_pass() {
        report.derived = Some(Derived {
            n: cond.n.expect("passing report"),
            a: cond.a.expect("passing report"),
            lambda: cond.lambda.expect("passing report"),
            epsilon: cond.epsilon,
        });
        let closed = table2_closed(&cond)?;
        report.closed_form = closed.entries.clone();
        if args.enumeration.verify || args.enumeration.sample > 0 {
            let ctx = build_ctx(&cond.params, args.field.field_poly.as_deref())?;
            let spec = cond.to_code_spec()?;
            enumeration_phase(&ctx, &spec, &closed, &args.enumeration, &mut report, &mut exit)?;
        }
    }
    let header = format!("exponent pair ({}, {})", args.a1, args.a2);
    emit_report(out, args.field.format, &header, &report)?;
    Ok(exit)
}

fn cmd_irreducible(args: &IrreducibleArgs, out: &mut impl Write) -> Result<i32> {
    validate_q(args.field.q)?;
    let params = FieldParams::from_qk(args.field.q, args.field.k)?;
    let nn = params.group_order();
    let a = rem_euclid_u64(args.a, nn);
    let u = gcd(params.delta, a);
    let conditions = vec![
        CheckEntry::compare("k_even", 0, args.field.k % 2),
        CheckEntry::compare("gcd_delta_a_eq_2", 2, u),
        CheckEntry::boolean("semiprimitive_a", u >= 2 && minus_one_is_power_of_p(params.p, u)),
    ];
    let mut report = Report {
        params,
        conditions,
        derived: None,
        closed_form: Vec::new(),
        brute_force: None,
        verified: None,
    };
    let all_ok = report.conditions.iter().all(|c| c.pass);
    let mut exit = if all_ok { 0 } else { 1 };
    if all_ok {
        let spec = CodeSpec::irreducible(params, args.a)?;
        report.derived = Some(Derived {
            n: spec.n,
            a: spec.a,
            lambda: spec.lambda,
            epsilon: None,
        });
        let closed = table1_from_lambda(params.q, params.k, spec.lambda);
        report.closed_form = closed.entries.clone();
        if args.enumeration.verify || args.enumeration.sample > 0 {
            let ctx = build_ctx(&params, args.field.field_poly.as_deref())?;
            enumeration_phase(&ctx, &spec, &closed, &args.enumeration, &mut report, &mut exit)?;
        }
    }
    let header = format!("irreducible component (a = {})", args.a);
    emit_report(out, args.field.format, &header, &report)?;
    Ok(exit)
}

fn cmd_catalog(args: &CatalogArgs, out: &mut impl Write) -> Result<i32> {
    validate_q(args.field.q)?;
    let params = FieldParams::from_qk(args.field.q, args.field.k)?;
    let formula = count_formula(args.field.q, args.field.k)?;
    let mut entries = enumerate_catalog(args.field.q, args.field.k)?;
    let mut exit = if entries.len() as u64 == formula { 0 } else { 1 };
    if args.verify {
        let ctx = build_ctx(&params, args.field.field_poly.as_deref())?;
        let threads = resolve_threads(args.threads);
        let budget = args.budget;
        let results = with_threads(threads, || {
            entries
                .iter_mut()
                .map(|e| verify_entry(&ctx, e, budget))
                .collect::<Result<Vec<bool>>>()
        })??;
        if results.iter().any(|&ok| !ok) {
            exit = 1;
        }
    }
    let catalog = CatalogOut {
        params,
        count_formula: formula,
        count_enumerated: entries.len() as u64,
        entries,
    };
    match args.field.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &catalog)
                .map_err(|e| Error::InvalidParameter(format!("serialization: {}", e)))?;
            writeln!(out).ok();
        }
        Format::Csv => {
            writeln!(out, "rep1,rep2,a1,a2,n,lambda").ok();
            for e in &catalog.entries {
                writeln!(out, "{},{},{},{},{},{}", e.rep1, e.rep2, e.a1, e.a2, e.n, e.lambda).ok();
            }
        }
        Format::Text => {
            writeln!(
                out,
                "catalog over F_{}^{} (q = {}, k = {}, delta = {})",
                params.q, params.k, params.q, params.k, params.delta
            )
            .ok();
            writeln!(
                out,
                "count formula: {}   enumerated: {}",
                catalog.count_formula, catalog.count_enumerated
            )
            .ok();
            for e in &catalog.entries {
                let verified = match e.verified {
                    Some(true) => "  [verified]",
                    Some(false) => "  [MISMATCH]",
                    None => "",
                };
                writeln!(
                    out,
                    "  cosets ({}, {})  pair ({}, {})  n = {}  lambda = {}  A(z) = {}{}",
                    e.rep1,
                    e.rep2,
                    e.a1,
                    e.a2,
                    e.n,
                    e.lambda,
                    e.enumerator.to_poly_string(),
                    verified
                )
                .ok();
            }
        }
    }
    Ok(exit)
}

fn cmd_verify_lemmas(args: &VerifyLemmasArgs, out: &mut impl Write) -> Result<i32> {
    validate_q(args.field.q)?;
    let params = FieldParams::from_qk(args.field.q, args.field.k)?;
    let checks = lemma_battery(args.field.q, args.field.k, args.sigma)?;
    let ok = checks.iter().all(|c| c.pass);
    let report = Report {
        params,
        conditions: checks,
        derived: None,
        closed_form: Vec::new(),
        brute_force: None,
        verified: Some(ok),
    };
    let header = format!("lemma battery (sigma = {})", args.sigma);
    emit_report(out, args.field.format, &header, &report)?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_probe(args: &ProbeArgs, out: &mut impl Write) -> Result<i32> {
    validate_q(args.field.q)?;
    let params = FieldParams::from_qk(args.field.q, args.field.k)?;
    let report = probe_conjecture(args.field.q, args.field.k, args.budget)?;
    let counterexample = report
        .matching_pairs
        .iter()
        .any(|p| !report.catalog_pairs.contains(p))
        || (report.pairs_skipped_budget == 0 && !report.conjecture_holds);
    match args.field.format {
        Format::Json => {
            let env = ProbeOut { params, report: report.clone() };
            serde_json::to_writer_pretty(&mut *out, &env)
                .map_err(|e| Error::InvalidParameter(format!("serialization: {}", e)))?;
            writeln!(out).ok();
        }
        Format::Csv => {
            writeln!(out, "rep1,rep2").ok();
            for (r1, r2) in &report.matching_pairs {
                writeln!(out, "{},{}", r1, r2).ok();
            }
        }
        Format::Text => {
            writeln!(
                out,
                "probe over F_{}^{}: {} coset pairs considered, {} enumerated, {} skipped by budget",
                params.q,
                params.k,
                report.pairs_considered,
                report.pairs_enumerated,
                report.pairs_skipped_budget
            )
            .ok();
            writeln!(out, "pairs matching the seven-weight shape: {:?}", report.matching_pairs).ok();
            writeln!(out, "pairs the catalog predicts:            {:?}", report.catalog_pairs).ok();
            if report.pairs_skipped_budget > 0 {
                writeln!(out, "result: inconclusive (budget exhausted before full coverage)").ok();
            } else if report.conjecture_holds {
                writeln!(out, "result: search found exactly the catalog").ok();
            } else {
                writeln!(out, "result: MISMATCH between search and catalog").ok();
            }
        }
    }
    Ok(if counterexample { 1 } else { 0 })
}

fn emit_report(out: &mut impl Write, format: Format, header: &str, report: &Report) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)
                .map_err(|e| Error::InvalidParameter(format!("serialization: {}", e)))?;
            writeln!(out).ok();
        }
        Format::Csv => {
            writeln!(out, "weight,frequency").ok();
            for e in &report.closed_form {
                writeln!(out, "{},{}", e.weight, e.frequency).ok();
            }
        }
        Format::Text => {
            let p = report.params;
            writeln!(
                out,
                "{} over F_{}^{} (p = {}, t = {}, delta = {})",
                header, p.q, p.k, p.p, p.t, p.delta
            )
            .ok();
            writeln!(out, "conditions:").ok();
            for c in &report.conditions {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "  [{}] {} (expected {}, actual {})",
                    tag, c.check_name, c.expected, c.actual
                )
                .ok();
            }
            if let Some(d) = &report.derived {
                let eps = d
                    .epsilon
                    .map(|e| format!(", epsilon = {}", e))
                    .unwrap_or_default();
                writeln!(out, "derived: n = {}, a = {}, lambda = {}{}", d.n, d.a, d.lambda, eps).ok();
            }
            if !report.closed_form.is_empty() {
                writeln!(out, "closed-form weight distribution:").ok();
                writeln!(out, "  weight  frequency").ok();
                for e in &report.closed_form {
                    writeln!(out, "  {:<7} {}", e.weight, e.frequency).ok();
                }
                let dist = WeightDistribution { entries: report.closed_form.clone() };
                writeln!(out, "A(z) = {}", dist.to_poly_string()).ok();
            }
            match (&report.brute_force, report.verified) {
                (Some(entries), Some(ok)) => {
                    let dist = WeightDistribution { entries: entries.clone() };
                    let verdict = if ok { "MATCH" } else { "MISMATCH" };
                    writeln!(out, "brute force ({} codewords): {}", dist.total(), verdict).ok();
                    if !ok {
                        writeln!(out, "observed A(z) = {}", dist.to_poly_string()).ok();
                    }
                }
                _ => {}
            }
            if report.brute_force.is_none() {
                if let Some(ok) = report.verified {
                    writeln!(out, "all checks pass: {}", ok).ok();
                }
            }
        }
    }
    Ok(())
}
