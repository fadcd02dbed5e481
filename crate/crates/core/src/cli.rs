//! The `affder` command line.
//!
//! Exit codes: 0 when every check passes, 2 when some computed equality
//! fails, 1 on usage or runtime errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use crate::cyclesums::{self, Identity, VerifyOptions};
use crate::error::{Error, Result};
use crate::formulas::{self, Family};
use crate::grouporacle::{self, BuildOptions};
use crate::partitions::{enumerate, PartitionConstraint};
use crate::report::{decimal6, Record, VerificationReport};
use crate::series::{self, Chain};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser, Serialize)]
#[command(name = "affder", version, about = "Exact derangement proportions in finite affine classical groups")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "pretty", global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// Keep wall-clock timings in reports (they differ between runs).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, env = "AFFDER_THREADS", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    #[serde(skip)]
    pub threads: Option<u64>,
    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Check identities, chains and combinatorial equalities.
    Verify(VerifyArgs),
    /// Evaluate a closed-form proportion at a prime power q.
    Delta(DeltaArgs),
    /// Compare the brute-force group oracle with the closed form.
    Oracle(OracleArgs),
    /// List partitions of n, optionally filtered.
    Partitions(PartitionArgs),
}

/// A selectable verification family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyFamily {
    Identity(Identity),
    Bijection,
    Chain(Chain),
    TFactorization,
    Euler,
    Jacobi,
}

impl VerifyFamily {
    pub fn all() -> Vec<VerifyFamily> {
        let mut v: Vec<_> = Identity::ALL.into_iter().map(VerifyFamily::Identity).collect();
        v.push(VerifyFamily::Bijection);
        v.extend(Chain::ALL.into_iter().map(VerifyFamily::Chain));
        v.extend([VerifyFamily::TFactorization, VerifyFamily::Euler, VerifyFamily::Jacobi]);
        v
    }

    pub fn name(self) -> String {
        match self {
            VerifyFamily::Identity(i) => i.name().into(),
            VerifyFamily::Bijection => "bijection".into(),
            VerifyFamily::Chain(c) => format!("chain-{}", c.name()),
            VerifyFamily::TFactorization => "t-factorization".into(),
            VerifyFamily::Euler => "euler".into(),
            VerifyFamily::Jacobi => "jacobi".into(),
        }
    }
}

impl FromStr for VerifyFamily {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        VerifyFamily::all().into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<String> = VerifyFamily::all().into_iter().map(VerifyFamily::name).collect();
            format!("unknown family '{s}'; expected one of: all, {}", names.join(", "))
        })
    }
}

fn parse_families(s: &str) -> std::result::Result<Vec<VerifyFamily>, String> {
    if s == "all" {
        return Ok(VerifyFamily::all());
    }
    s.split(',').map(|t| t.trim().parse()).collect()
}

fn serialize_families<S: serde::Serializer>(v: &[Vec<VerifyFamily>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().flatten().map(|f| f.name()))
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Comma-separated families, or `all`; may be repeated.
    #[arg(long = "family", required = true, value_parser = parse_families)]
    #[serde(rename = "families", serialize_with = "serialize_families")]
    pub family: Vec<Vec<VerifyFamily>>,
    /// Smallest m (or size, for `signed`).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub min_m: u64,
    /// Largest m for partition-sum identities, and largest size for `signed`.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_m: u64,
    /// Degree bound for the generating-function families.
    #[arg(long, default_value_t = 40)]
    pub max_n: usize,
    /// Largest number of parts for the generating-function families.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_parts: u64,
    /// Largest a for `bijection`.
    #[arg(long, default_value_t = 22)]
    pub max_a: usize,
    /// Truncation order (number of y-coefficients) for chains, `t-factorization` and `euler`.
    #[arg(long, default_value_t = 16)]
    pub order: usize,
    /// Total degree for `jacobi`.
    #[arg(long, default_value_t = 20)]
    pub degree: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct DeltaArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    #[arg(long)]
    pub q: u64,
    /// The proportion of p-power derangements instead.
    #[arg(long)]
    pub p_power: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct OracleArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub p_power: bool,
    /// Cap on the number of candidate matrices, |GL_dim(q^e)|.
    #[arg(long, default_value_t = grouporacle::DEFAULT_BUDGET)]
    pub budget: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstraintArg {
    /// Odd parts have even multiplicity.
    OddEvenMult,
    /// Even parts have even multiplicity.
    EvenEvenMult,
    /// Every multiplicity is even.
    AllEvenMult,
}

#[derive(Debug, Args, Serialize)]
pub struct PartitionArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(0..=200))]
    pub n: u64,
    #[arg(long, value_enum)]
    pub constraint: Option<ConstraintArg>,
    /// Exactly this many parts.
    #[arg(long)]
    pub parts: Option<usize>,
    /// Largest part at most this.
    #[arg(long)]
    pub max_part: Option<usize>,
    #[arg(long)]
    pub cute: bool,
    #[arg(long)]
    pub fixed_point: bool,
}

fn family_span(min: u64, max: u64) -> Result<std::ops::RangeInclusive<usize>> {
    if min > max {
        return Err(Error::InvalidArgument(format!("--min-m {min} exceeds --max-m {max}")));
    }
    Ok(min as usize..=max as usize)
}

fn bool_record(name: &str, key: &str, v: usize, ok: bool) -> Record {
    Record::new(name, ok, true, ok).param(key, v as i64)
}

fn run_verify(args: &VerifyArgs) -> Result<VerificationReport> {
    let mut fams: Vec<VerifyFamily> = Vec::new();
    for f in args.family.iter().flatten() {
        if !fams.contains(f) {
            fams.push(*f);
        }
    }
    let span = family_span(args.min_m, args.max_m)?;
    let mut report = VerificationReport::default();
    for f in fams {
        match f {
            VerifyFamily::Identity(id @ (Identity::CuteGenfun | Identity::FixedPointGenfun)) => {
                let opts = VerifyOptions { max_n: args.max_n };
                report.extend(cyclesums::verify_identity(id, 1..=args.max_parts as usize, opts)?);
            }
            VerifyFamily::Identity(id) => {
                report.extend(cyclesums::verify_identity(id, span.clone(), VerifyOptions { max_n: args.max_n })?);
            }
            VerifyFamily::Bijection => report.extend(cyclesums::verify_bijection(args.max_a)),
            VerifyFamily::Chain(c) => report.extend(series::verify_chain(c, args.order)?),
            VerifyFamily::TFactorization => {
                let t_o = series::build_t(series::SeriesFamily::O, args.order);
                let t_sp = series::build_t(series::SeriesFamily::Sp, args.order);
                let y = series::TruncatedSeries::monomial(args.order, 1, crate::exactalg::RationalFunctionQ::one());
                let rhs = t_sp.add(&y.mul(&t_sp)?)?;
                for (k, (a, b)) in t_o.coefficients().iter().zip(rhs.coefficients()).enumerate() {
                    report.push(Record::new("t-factorization", a, b, a == b).param("k", k as i64));
                }
            }
            VerifyFamily::Euler => {
                report.push(bool_record("euler", "order", args.order, series::euler_check(args.order)?));
            }
            VerifyFamily::Jacobi => {
                report.push(bool_record("jacobi", "degree", args.degree, series::jacobi_check(args.degree)?));
                let d = args.degree.min(16);
                report.push(bool_record(
                    "jacobi-specialization",
                    "degree",
                    d,
                    series::jacobi_specialization_check(d)?,
                ));
            }
        }
    }
    Ok(report)
}

fn validate_q(family: Family, q: u64) -> Result<()> {
    if grouporacle::prime_power(q).is_none() {
        return Err(Error::InvalidArgument(format!("q = {q} is not a prime power")));
    }
    if family.needs_odd_q() && q % 2 == 0 {
        return Err(Error::InvalidArgument(format!("{family} needs odd q, got {q}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct DeltaOutput<'a> {
    tool_version: &'static str,
    config: &'a Cli,
    family: String,
    m: u64,
    q: u64,
    p_power: bool,
    value: String,
    approx: String,
    conjectural: bool,
}

fn frac(r: &crate::exactalg::BigRational) -> String {
    if r.denom() == &1.into() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

fn run_delta(cli: &Cli, args: &DeltaArgs) -> Result<String> {
    validate_q(args.family, args.q)?;
    let m = args.m as usize;
    let (f, conj) = if args.p_power { formulas::delta_p(args.family, m)? } else { formulas::delta(args.family, m)? };
    let v = formulas::eval_q(&f, args.q)?;
    Ok(match cli.format {
        Format::Pretty => {
            let tag = if conj { " conjectural" } else { "" };
            format!("{} ({}){tag}\n", frac(&v), decimal6(&v))
        }
        Format::Csv => format!("family,m,q,p_power,value,approx,conjectural\n{},{},{},{},{},{},{}\n", args.family, m, args.q, args.p_power, frac(&v), decimal6(&v), conj),
        Format::Json => {
            let out = DeltaOutput {
                tool_version: env!("CARGO_PKG_VERSION"),
                config: cli,
                family: args.family.to_string(),
                m: args.m,
                q: args.q,
                p_power: args.p_power,
                value: frac(&v),
                approx: decimal6(&v),
                conjectural: conj,
            };
            serde_json::to_string_pretty(&out).map_err(|e| Error::Internal(e.to_string()))? + "\n"
        }
    })
}

fn run_oracle(args: &OracleArgs) -> Result<VerificationReport> {
    validate_q(args.family, args.q)?;
    grouporacle::compare_with_formula(args.family, args.m as usize, args.q, args.p_power, BuildOptions { budget: args.budget })
}

#[derive(Serialize)]
struct PartitionOutput<'a> {
    tool_version: &'static str,
    config: &'a Cli,
    partitions: Vec<Vec<usize>>,
    count: usize,
}

fn run_partitions(cli: &Cli, args: &PartitionArgs) -> Result<String> {
    let mut c = match args.constraint {
        None => PartitionConstraint::None,
        Some(ConstraintArg::OddEvenMult) => PartitionConstraint::OddPartsEvenMultiplicity,
        Some(ConstraintArg::EvenEvenMult) => PartitionConstraint::EvenPartsEvenMultiplicity,
        Some(ConstraintArg::AllEvenMult) => PartitionConstraint::AllEvenMultiplicity,
    };
    if let Some(k) = args.parts {
        c = c.and(PartitionConstraint::ExactlyParts(k));
    }
    if let Some(k) = args.max_part {
        c = c.and(PartitionConstraint::SizeCap(k));
    }
    let found: Vec<Vec<usize>> = enumerate(args.n as usize, &c)
        .filter(|p| (!args.cute || p.is_cute()) && (!args.fixed_point || p.has_fixed_point()))
        .map(|p| p.parts().to_vec())
        .collect();
    let show = |p: &[usize]| format!("({})", p.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
    Ok(match cli.format {
        Format::Pretty => {
            let mut s: String = found.iter().map(|p| show(p) + "\n").collect();
            s += &format!("count {}\n", found.len());
            s
        }
        Format::Csv => {
            let mut s = String::from("partition\n");
            for p in &found {
                s += &format!("\"{}\"\n", show(p));
            }
            s
        }
        Format::Json => {
            let count = found.len();
            let out = PartitionOutput { tool_version: env!("CARGO_PKG_VERSION"), config: cli, partitions: found, count };
            serde_json::to_string_pretty(&out).map_err(|e| Error::Internal(e.to_string()))? + "\n"
        }
    })
}

fn render(cli: &Cli, mut report: VerificationReport) -> Result<(String, bool)> {
    if !cli.timing {
        report.strip_timing();
    }
    report.config = serde_json::to_value(cli).map_err(|e| Error::Internal(e.to_string()))?;
    let ok = report.all_equal();
    let text = match cli.format {
        Format::Json => report.to_json()? + "\n",
        Format::Csv => report.to_csv()?,
        Format::Pretty => report.to_pretty(),
    };
    Ok((text, ok))
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let report = match &cli.command {
        Command::Verify(a) => run_verify(a)?,
        Command::Oracle(a) => run_oracle(a)?,
        Command::Delta(a) => return Ok((run_delta(cli, a)?, EXIT_OK)),
        Command::Partitions(a) => return Ok((run_partitions(cli, a)?, EXIT_OK)),
    };
    outcome(cli, report)
}

fn outcome(cli: &Cli, report: VerificationReport) -> Result<(String, i32)> {
    let (text, ok) = render(cli, report)?;
    Ok((text, if ok { EXIT_OK } else { EXIT_MISMATCH }))
}

/// Parse `args` (including the program name), run, and write to `out` / `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_ERROR;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    if let Some(n) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global();
    }
    match execute(&cli) {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text),
                None => out.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_ERROR;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run_with(std::iter::once("affder").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn delta_outputs() {
        assert_eq!(call(&["delta", "--family", "au", "--m", "2", "--q", "2"]).1, "11/32 (0.34375)\n");
        assert_eq!(call(&["delta", "--family", "asp", "--m", "1", "--q", "3"]).1, "7/27 (0.259259) conjectural\n");
        assert!(call(&["delta", "--family", "agl", "--m", "3", "--q", "2"]).1.starts_with("25/64 "));
        let (code, _, err) = call(&["delta", "--family", "asp", "--m", "1", "--q", "4"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("odd q"));
        assert_eq!(call(&["delta", "--family", "au", "--m", "1", "--q", "6"]).0, EXIT_ERROR);
    }

    #[test]
    fn unknown_family_is_a_usage_error() {
        let (code, _, err) = call(&["verify", "--family", "nope"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("unknown family"));
        assert_eq!(call(&["delta", "--family", "ao", "--m", "1", "--q", "3"]).0, EXIT_ERROR);
    }

    #[test]
    fn verify_and_formats() {
        let (code, out, _) = call(&["verify", "--family", "sympl", "--max-m", "4", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["summary"]["checked"], 4);
        assert_eq!(v["config"]["command"], "verify");
        assert!(v["records"][0].get("elapsed_ms").unwrap().is_null());
        let (code, out, _) = call(&["verify", "--family", "unitary-p,euler", "--max-m", "3", "--order", "6", "--format", "csv"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 1 + 3 + 1);
    }

    #[test]
    fn inequality_exits_two() {
        let cli = Cli::try_parse_from(["affder", "partitions", "--n", "1"]).unwrap();
        let bad = VerificationReport::new(vec![Record::new("x", 1, 2, false)]);
        assert_eq!(outcome(&cli, bad).unwrap().1, EXIT_MISMATCH);
        let good = VerificationReport::new(vec![Record::new("x", 1, 1, true)]);
        assert_eq!(outcome(&cli, good).unwrap().1, EXIT_OK);
    }

    #[test]
    fn partitions_listing() {
        let (_, out, _) = call(&["partitions", "--n", "2", "--constraint", "odd-even-mult"]);
        assert_eq!(out, "(2)\n(1,1)\ncount 2\n");
        let (_, out, _) = call(&["partitions", "--n", "9", "--cute", "--parts", "4"]);
        assert!(out.contains("(3,2,2,2)\n") && out.contains("(5,2,1,1)\n"));
        assert!(call(&["partitions", "--n", "3"]).1.ends_with("count 3\n"));
        assert_eq!(call(&["partitions", "--n", "201"]).0, EXIT_ERROR);
    }

    #[test]
    fn oracle_command() {
        let (code, out, _) = call(&["oracle", "--family", "ao-plus", "--m", "1", "--q", "3", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["records"][0]["lhs"], "5/9");
        assert_eq!(v["records"][0]["approx"], "0.555556");
        let (code, _, err) = call(&["oracle", "--family", "agl", "--m", "3", "--q", "4", "--budget", "1000"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("budget"));
    }
}
