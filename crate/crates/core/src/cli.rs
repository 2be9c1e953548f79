//! The `symspan` command line: argument definitions, the commands, and the
//! exit-code contract.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 memory
//! budget refusal, 4 a certificate failed its own verification.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, DValue};
use crate::cache::{CacheEntry, CacheFile, DEFAULT_CACHE_PATH};
use crate::error::{Error, Result};
use crate::golden::{GoldenTables, GOLDEN_N_MAX};
use crate::partitions::{partition_counts, Partition};
use crate::rank::{
    self, CertificateSet, Method, DEFAULT_MEMORY_BUDGET_MIB, DEFAULT_PRIMES,
};
use crate::series::series_row;

pub mod exit {
    pub const OK: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const RESOURCE: i32 = 3;
    pub const CERTIFICATE: i32 = 4;
}

#[derive(Debug, Parser)]
#[command(
    name = "symspan",
    version,
    about = "Dimension of the span of symmetric-power characters of S_n, its bounds, and the relations behind it"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute D(1..=n_max).
    Dims(DimsArgs),
    /// Tabulate U, E, G, H (and optionally D) and check the inequality chain.
    Bounds(BoundsArgs),
    /// Emit verified integer relations among the f_λ for one n.
    Relations(RelationsArgs),
    /// Recompute both published tables for n = 1..=23 and diff them.
    VerifyTables,
    /// Greedy triangular decompositions and the ν(m) inequality check.
    Nu(NuArgs),
    /// Character values χ_N on a λ-cycle.
    Character(CharacterArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Modular,
    Exact,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Modular => Method::ModularConsensus,
            MethodArg::Exact => Method::Exact,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ComputeOpts {
    #[arg(long, value_enum, default_value = "modular")]
    pub method: MethodArg,
    /// Primes for the modular route, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PRIMES)]
    pub primes: Vec<u64>,
    /// Largest matrix the exact route may materialise, in MiB.
    #[arg(long = "memory-budget", default_value_t = DEFAULT_MEMORY_BUDGET_MIB)]
    pub memory_budget: u64,
    #[arg(long, default_value = DEFAULT_CACHE_PATH)]
    pub cache: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DimsArgs {
    #[arg(long = "n-max", value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    #[command(flatten)]
    pub compute: ComputeOpts,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[arg(long = "n-max", value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    /// Also compute D(n) (through the cache) and the gap statistic.
    #[arg(long = "include-d")]
    pub include_d: bool,
    #[command(flatten)]
    pub compute: ComputeOpts,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct RelationsArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Certificate JSON whose relations must lie in the span of the basis.
    #[arg(long = "check-file")]
    pub check_file: Option<PathBuf>,
    #[arg(long = "memory-budget", default_value_t = DEFAULT_MEMORY_BUDGET_MIB)]
    pub memory_budget: u64,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("mode").required(true).multiple(true).args(["decompose", "verify", "max_below"])))]
pub struct NuArgs {
    /// Print the greedy decomposition of each value.
    #[arg(long, value_delimiter = ',')]
    pub decompose: Vec<u64>,
    /// Check ν(m) ≤ √(2m) + 3m^{1/4} for every m in LO..=HI.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    pub verify: Option<Vec<u64>>,
    /// Report the maximum of ν(m) over m < LIMIT.
    #[arg(long = "max-below", value_name = "LIMIT")]
    pub max_below: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct CharacterArgs {
    /// Cycle type as comma-separated parts, e.g. 3,2,2.
    #[arg(long)]
    pub lambda: String,
    #[arg(long = "n-max", default_value_t = 20)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::MemoryBudget { .. } => exit::RESOURCE,
        Error::InvalidArgument(_) | Error::NotPrime(_) => exit::USAGE,
        _ => exit::MISMATCH,
    }
}

/// Runs a parsed command line, writing results to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Dims(a) => cmd_dims(&a, out, err),
        Command::Bounds(a) => cmd_bounds(&a, out, err),
        Command::Relations(a) => cmd_relations(&a, out, err),
        Command::VerifyTables => cmd_verify_tables(&GoldenTables::embedded(), out),
        Command::Nu(a) => cmd_nu(&a, out),
        Command::Character(a) => cmd_character(&a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Parses `args` (program name first) and runs them.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            }
        }
    }
}

/// `D(n)` for each `n` in `ns`, from the cache where it satisfies the
/// requested method and computed (in parallel over `n`) otherwise.
pub fn resolve_dimensions(
    ns: &[usize],
    opts: &ComputeOpts,
) -> Result<BTreeMap<usize, DValue>> {
    let method = Method::from(opts.method);
    let cache = if opts.no_cache {
        CacheFile::default()
    } else {
        CacheFile::load(&opts.cache)?
    };
    let mut found = BTreeMap::new();
    let mut missing = Vec::new();
    for &n in ns {
        match cache.get(n) {
            Some(e) if method == Method::ModularConsensus || e.method == Method::Exact => {
                found.insert(n, e.value());
            }
            _ => missing.push(n),
        }
    }
    let computed: Vec<(usize, DValue)> = missing
        .par_iter()
        .map(|&n| {
            rank::compute_dimension(n, method, &opts.primes, opts.memory_budget).map(|d| (n, d))
        })
        .collect::<Result<_>>()?;
    if !opts.no_cache && !computed.is_empty() {
        CacheFile::merge_into(
            &opts.cache,
            computed
                .iter()
                .map(|&(n, d)| (n, CacheEntry::new(d, &opts.primes))),
        )?;
    }
    found.extend(computed);
    Ok(found)
}

#[derive(Serialize)]
struct DimsRow {
    n: usize,
    #[serde(rename = "D")]
    d: u64,
    method: Method,
}

#[derive(Serialize)]
struct DimsJson<'a> {
    requested_method: Method,
    primes: &'a [u64],
    rows: Vec<DimsRow>,
}

pub fn cmd_dims(args: &DimsArgs, out: &mut dyn Write, _err: &mut dyn Write) -> Result<i32> {
    let ns: Vec<usize> = (1..=args.n_max as usize).collect();
    let dims = resolve_dimensions(&ns, &args.compute)?;
    let method = Method::from(args.compute.method);
    let primes: &[u64] = match method {
        Method::ModularConsensus => &args.compute.primes,
        Method::Exact => &[],
    };
    let primes_text = primes
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(";");
    match args.format {
        Format::Table => {
            write!(out, "# method: {method}")?;
            if !primes.is_empty() {
                write!(out, "  primes: {}", primes_text.replace(';', ","))?;
            }
            writeln!(out)?;
            writeln!(out, "{:>4}  {:>6}  method", "n", "D")?;
            for (n, d) in &dims {
                writeln!(out, "{:>4}  {:>6}  {}", n, d.value, d.method)?;
            }
        }
        Format::Csv => {
            writeln!(out, "n,D,method,primes")?;
            for (n, d) in &dims {
                let p = if d.method == Method::Exact { "" } else { &primes_text };
                writeln!(out, "{},{},{},{}", n, d.value, d.method, p)?;
            }
        }
        Format::Json => {
            let doc = DimsJson {
                requested_method: method,
                primes,
                rows: dims
                    .iter()
                    .map(|(&n, d)| DimsRow {
                        n,
                        d: d.value,
                        method: d.method,
                    })
                    .collect(),
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(exit::OK)
}

#[derive(Serialize)]
struct BoundsJson<'a> {
    records: &'a [bounds::BoundsRecord],
    chain_violations: &'a [String],
}

pub fn cmd_bounds(args: &BoundsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let n_max = args.n_max as usize;
    let dims = if args.include_d {
        // Gap statistics need D at every smaller argument, so fetch them all.
        let ns: Vec<usize> = (1..=n_max).collect();
        resolve_dimensions(&ns, &args.compute)?
    } else {
        BTreeMap::new()
    };
    let records = bounds::bounds_records(n_max, &dims)?;
    let violations = bounds::chain_violations(&records);
    match args.format {
        Format::Table => {
            writeln!(
                out,
                "{:>4} {:>6} {:>6} {:>6} {:>6} {:>6} {:>8} {:>6} {:>5}",
                "n", "D", "U", "E", "G", "H", "P", "eq2", "gap"
            )?;
            for r in &records {
                let d = r.d.map_or("-".to_string(), |d| d.value.to_string());
                let gap = r.gap.map_or("-".to_string(), |g| g.to_string());
                writeln!(
                    out,
                    "{:>4} {:>6} {:>6} {:>6} {:>6} {:>6} {:>8} {:>6} {:>5}",
                    r.n, d, r.u, r.e, r.g, r.h, r.p, r.eq2, gap
                )?;
            }
            write_violations(&violations, out)?;
        }
        Format::Csv => {
            bounds::write_csv(&records, &mut *out)?;
            write_violations(&violations, err)?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(
                &mut *out,
                &BoundsJson {
                    records: &records,
                    chain_violations: &violations,
                },
            )?;
            writeln!(out)?;
        }
    }
    Ok(if violations.is_empty() {
        exit::OK
    } else {
        exit::MISMATCH
    })
}

fn write_violations(violations: &[String], w: &mut dyn Write) -> Result<()> {
    if violations.is_empty() {
        writeln!(w, "chain violations: none")?;
    } else {
        writeln!(w, "chain violations: {}", violations.len())?;
        for v in violations {
            writeln!(w, "  {v}")?;
        }
    }
    Ok(())
}

pub fn cmd_relations(args: &RelationsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let n = args.n as usize;
    let matrix = rank::build_matrix_with_budget(n, args.memory_budget)?;
    let certs = rank::nullspace_of(&matrix);
    let p = matrix.num_rows();
    let count_line = format!(
        "count = P({n}) - D({n}) = {p} - {} = {}",
        p - certs.len(),
        certs.len()
    );
    // Reports go to stdout only when stdout is not carrying JSON.
    let report: &mut dyn Write = match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &CertificateSet::new(n, &certs))?;
            writeln!(out)?;
            err
        }
        Format::Table | Format::Csv => {
            for c in &certs {
                let tag = if c.verified { "verified" } else { "FAILED" };
                writeln!(out, "[{tag}] {c}")?;
            }
            out
        }
    };
    writeln!(report, "{count_line}")?;
    if certs.iter().any(|c| !c.verified) {
        writeln!(report, "error: a certificate failed self-verification")?;
        return Ok(exit::CERTIFICATE);
    }

    let mut code = exit::OK;
    if let Some(path) = &args.check_file {
        let text = std::fs::read_to_string(path)?;
        let set: CertificateSet = serde_json::from_str(&text)?;
        if set.n != n {
            return Err(Error::InvalidArgument(format!(
                "check file is for n = {}, not {n}",
                set.n
            )));
        }
        for (i, rel) in set.certificates().iter().enumerate() {
            let verifies = rank::verify_certificate(rel);
            let contained = rank::span_contains(&certs, rel);
            writeln!(
                report,
                "check {}: {rel}: verifies={} in_span={}",
                i + 1,
                yes_no(verifies),
                yes_no(contained)
            )?;
            if !(verifies && contained) {
                code = exit::MISMATCH;
            }
        }
    }
    Ok(code)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Everything in the two published tables, recomputed from scratch with the
/// exact rank route.
#[derive(Debug, Clone, PartialEq)]
pub struct ComputedTables {
    pub d: Vec<u64>,
    pub u: Vec<i64>,
    pub eq2: Vec<u64>,
    pub p: Vec<u64>,
    pub e: Vec<u64>,
    pub g: Vec<u64>,
    pub h: Vec<u64>,
}

impl ComputedTables {
    /// Values for `n = 1..=n_max`; index `i` holds `n = i + 1`.
    pub fn compute(n_max: usize) -> Result<Self> {
        let d = (1..=n_max)
            .into_par_iter()
            .map(|n| Ok(rank::rank_exact(&rank::build_matrix(n)?) as u64))
            .collect::<Result<Vec<_>>>()?;
        let u = bounds::compute_u(n_max)[1..].to_vec();
        let p = partition_counts(n_max)[1..]
            .iter()
            .map(|v| u64::try_from(v).expect("P(n) fits in u64 for tabulated n"))
            .collect();
        let e = (1..=n_max).map(|n| bounds::compute_e(n) as u64).collect();
        let g = (1..=n_max).map(bounds::compute_g).collect();
        let h = (1..=n_max)
            .map(bounds::compute_h)
            .collect::<Result<Vec<_>>>()?;
        Ok(ComputedTables {
            d,
            u,
            eq2: (1..=n_max).map(|n| (n * (n - 1) / 2 + 1) as u64).collect(),
            p,
            e,
            g,
            h,
        })
    }

    /// `(n, U(n) - D(n))` wherever the difference is nonzero.
    pub fn u_minus_d(&self) -> Vec<(usize, i64)> {
        self.u
            .iter()
            .zip(&self.d)
            .enumerate()
            .filter(|(_, (&u, &d))| u != d as i64)
            .map(|(i, (&u, &d))| (i + 1, u - d as i64))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMismatch {
    pub table: u8,
    pub n: usize,
    pub column: &'static str,
    pub expected: i64,
    pub computed: i64,
}

impl std::fmt::Display for TableMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "table {}, n = {}, column {}: expected {}, computed {}",
            self.table, self.n, self.column, self.expected, self.computed
        )
    }
}

/// Every disagreement between `golden` and `computed`, table 1 before table
/// 2, each by increasing `n`.
pub fn diff_tables(golden: &GoldenTables, computed: &ComputedTables) -> Vec<TableMismatch> {
    let at = |v: &[u64], n: usize| v.get(n - 1).map_or(-1, |&x| x as i64);
    let mut found = Vec::new();
    for r in &golden.table1 {
        let cols = [
            ("D", r.d, at(&computed.d, r.n)),
            ("U", r.u, computed.u.get(r.n - 1).copied().unwrap_or(-1)),
            ("n(n-1)/2+1", r.eq2, at(&computed.eq2, r.n)),
            ("P", r.p, at(&computed.p, r.n)),
        ];
        found.extend(mismatches(1, r.n, &cols));
    }
    for r in &golden.table2 {
        let cols = [
            ("D", r.d, at(&computed.d, r.n)),
            ("E", r.e, at(&computed.e, r.n)),
            ("G", r.g, at(&computed.g, r.n)),
            ("H", r.h, at(&computed.h, r.n)),
        ];
        found.extend(mismatches(2, r.n, &cols));
    }
    found
}

fn mismatches<'a>(
    table: u8,
    n: usize,
    cols: &'a [(&'static str, u64, i64)],
) -> impl Iterator<Item = TableMismatch> + 'a {
    cols.iter()
        .filter(|(_, expected, computed)| *expected as i64 != *computed)
        .map(move |&(column, expected, computed)| TableMismatch {
            table,
            n,
            column,
            expected: expected as i64,
            computed,
        })
}

pub fn cmd_verify_tables(golden: &GoldenTables, out: &mut dyn Write) -> Result<i32> {
    let computed = ComputedTables::compute(GOLDEN_N_MAX)?;
    report_verification(golden, &computed, out)
}

/// Prints the diff and the `U - D` report; exit code 1 on any mismatch.
pub fn report_verification(
    golden: &GoldenTables,
    computed: &ComputedTables,
    out: &mut dyn Write,
) -> Result<i32> {
    let gaps: Vec<String> = computed
        .u_minus_d()
        .iter()
        .map(|(n, g)| format!("n={n} ({g})"))
        .collect();
    writeln!(
        out,
        "U - D nonzero at: {}",
        if gaps.is_empty() {
            "none".to_string()
        } else {
            gaps.join(", ")
        }
    )?;
    let diffs = diff_tables(golden, computed);
    let Some(first) = diffs.first() else {
        writeln!(
            out,
            "tables 1 and 2 match for n = 1..={} (exact rank)",
            computed.d.len()
        )?;
        return Ok(exit::OK);
    };
    writeln!(out, "mismatch: {first}")?;
    for m in &diffs[1..] {
        writeln!(out, "also: {m}")?;
    }
    writeln!(out, "{} mismatch(es) in total", diffs.len())?;
    Ok(exit::MISMATCH)
}

pub fn cmd_nu(args: &NuArgs, out: &mut dyn Write) -> Result<i32> {
    let mut code = exit::OK;
    for &m in &args.decompose {
        writeln!(out, "{}", bounds::nu(m))?;
    }
    if let Some(range) = &args.verify {
        let report = bounds::check_nu_inequality(range[0], range[1])?;
        writeln!(
            out,
            "checked m in [{}, {}] ({} values): {} violations; min slack ≈ {:.4} at m = {}",
            report.m_lo,
            report.m_hi,
            report.checked,
            report.violations.len(),
            report.min_slack,
            report.min_slack_at
        )?;
        if !report.violations.is_empty() {
            writeln!(out, "violations: {:?}", report.violations)?;
            code = exit::MISMATCH;
        }
    }
    if let Some(limit) = args.max_below {
        match bounds::max_nu_below(limit) {
            Some((nu, m)) => writeln!(out, "max ν = {nu} at m = {m}")?,
            None => writeln!(out, "no m below {limit}")?,
        }
    }
    Ok(code)
}

/// Parses `--lambda`, sorting unsorted input into canonical order.
/// Returns the partition and whether it had to be sorted.
pub fn parse_lambda(text: &str) -> Result<(Partition, bool)> {
    let parts = text
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<usize>()
                .ok()
                .filter(|&p| p > 0)
                .ok_or_else(|| Error::InvalidArgument(format!("bad part {s:?} in --lambda")))
        })
        .collect::<Result<Vec<_>>>()?;
    let sorted = parts.windows(2).all(|w| w[0] >= w[1]);
    Ok((Partition::from_unsorted(parts)?, !sorted))
}

#[derive(Serialize)]
struct CharacterJson {
    lambda: Partition,
    #[serde(serialize_with = "numbers")]
    values: Vec<BigInt>,
}

fn numbers<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        let num: serde_json::Number = x.to_string().parse().map_err(serde::ser::Error::custom)?;
        seq.serialize_element(&num)?;
    }
    seq.end()
}

pub fn cmd_character(args: &CharacterArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (lambda, resorted) = parse_lambda(&args.lambda)?;
    if resorted {
        writeln!(err, "warning: --lambda sorted to {lambda}")?;
    }
    let values = series_row(&lambda, args.n_max).into_coeffs();
    match args.format {
        Format::Table => {
            let line: Vec<String> = values.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Format::Csv => {
            writeln!(out, "N,chi")?;
            for (i, v) in values.iter().enumerate() {
                writeln!(out, "{i},{v}")?;
            }
        }
        Format::Json => {
            serde_json::to_writer(&mut *out, &CharacterJson { lambda, values })?;
            writeln!(out)?;
        }
    }
    Ok(exit::OK)
}
