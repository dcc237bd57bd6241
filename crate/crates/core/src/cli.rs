//! The `abnormal-forge` command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage, parse or
//! configuration error, 3 a search or memory budget ran out.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde_json::json;

use crate::cf::{read_digit_file, write_digit_file, Rational};
use crate::construction::{
    construct, verify_run, CertificateFile, ConstructedNumber, ConstructionConfig, RunHeader, TailMode,
    VerifyOptions, DEFAULT_SAMPLE_WINDOW,
};
use crate::limits::{Limits, DEFAULT_SEARCH_LIMIT};
use crate::nt::{
    crt_min_solution, discrete_log_with, find_artin_prime_with, is_primitive_root_with, kronecker_symbol,
    lenstra_finiteness, ResidueConstraint, Residues,
};
use crate::radix::{base_expansion, cf_normality_report, max_run, Convention};
use crate::seed::{SeedSource, DEFAULT_DIGIT_CAP};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "abnormal-forge", version, about = "Build and check CF-normal, absolutely abnormal numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build y from a seed and write its digits and certificates.
    Construct(ConstructArgs),
    /// Re-check a certificate file against a digit file.
    Verify(VerifyArgs),
    /// Digit statistics.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Number-theory utilities.
    #[command(subcommand)]
    Nt(NtCommand),
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("seed").required(true).args(["seed_rng", "seed_file"])))]
struct ConstructArgs {
    #[arg(long)]
    seed_rng: Option<u64>,
    #[arg(long)]
    seed_file: Option<PathBuf>,
    /// Largest digit the pseudo-random seed may produce.
    #[arg(long, default_value_t = DEFAULT_DIGIT_CAP)]
    digit_cap: u64,
    #[arg(long)]
    block_size: u64,
    #[arg(long)]
    blocks: u64,
    /// paper, relaxed:<c> or toy.
    #[arg(long, default_value = "paper")]
    mode: String,
    #[arg(long, default_value = "0")]
    tail_offset: String,
    /// Seed digits appended after the last block.
    #[arg(long, default_value_t = 0)]
    extra_seed_digits: u64,
    #[arg(long)]
    out_digits: PathBuf,
    #[arg(long)]
    out_cert: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
    search_limit: u64,
    /// Leave the timestamp out of the run header.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    cert: PathBuf,
    #[arg(long)]
    digits: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SAMPLE_WINDOW)]
    sample_window: u64,
}

#[derive(Subcommand, Debug)]
enum AnalyzeCommand {
    /// Frequencies of CF digit strings against their Gauss measures.
    Cf {
        #[arg(long)]
        digits: PathBuf,
        /// Strings separated by `;`, digits within a string by `,`.
        #[arg(long, default_value = "1;2;1,1")]
        strings: String,
        #[arg(long)]
        prefix: Option<usize>,
    },
    /// Base-b expansion of num/den with a run report for one symbol.
    Base {
        #[arg(long)]
        num: String,
        #[arg(long)]
        den: String,
        #[arg(long)]
        base: u64,
        #[arg(long)]
        places: usize,
        #[arg(long)]
        symbol: u64,
        #[arg(long, default_value = "non-terminating")]
        convention: String,
    },
}

#[derive(Subcommand, Debug)]
enum NtCommand {
    /// log_g h modulo the prime p.
    Dlog {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        p: String,
    },
    /// Whether g is a primitive root modulo the prime p.
    Primroot {
        #[arg(long)]
        g: String,
        #[arg(long)]
        p: String,
    },
    /// Least prime ℓ·f + a with g as a primitive root.
    Artin {
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
        search_limit: u64,
    },
    /// Kronecker symbol (d/n).
    Kronecker {
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long)]
        n: String,
    },
    /// Lenstra's finiteness conditions for primes ≡ a (mod f) with root g.
    Lenstra {
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        a: String,
    },
    /// Least positive solution of residue constraints such as `3:0,1` or `5:!2`.
    Crt {
        #[arg(long = "mod", required = true)]
        constraints: Vec<String>,
    },
}

/// Runs the command line with the process arguments and standard streams.
pub fn main_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Construct(a) => cmd_construct(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Analyze(a) => cmd_analyze(a, out),
        Command::Nt(a) => cmd_nt(a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_resource() {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    }
}

fn natural(name: &str, text: &str) -> Result<BigUint> {
    crate::decimal::parse(text).map_err(|msg| Error::input(None, format!("--{name}: {msg}")))
}

fn integer(name: &str, text: &str) -> Result<BigInt> {
    let t = text.trim();
    let (neg, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let mag = natural(name, digits)?;
    Ok(if neg { -BigInt::from(mag) } else { BigInt::from(mag) })
}

fn timestamp(no_timestamp: bool) -> Option<u64> {
    if no_timestamp {
        return None;
    }
    if let Ok(v) = std::env::var("SOURCE_DATE_EPOCH") {
        return v.trim().parse().ok();
    }
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .ok()
        .map(|d| d.as_secs())
}

fn cmd_construct(a: ConstructArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mode = TailMode::from_str(&a.mode)?;
    let mut source = match (&a.seed_rng, &a.seed_file) {
        (Some(seed), _) => SeedSource::rng_with_cap(*seed, a.digit_cap),
        (None, Some(path)) => SeedSource::file(path)?,
        (None, None) => return Err(Error::input(None, "a seed source is required")),
    };
    let limits = Limits {
        search_limit: a.search_limit,
        ..Limits::from_env()
    };
    let config = ConstructionConfig {
        block_size: a.block_size,
        blocks: a.blocks,
        mode,
        tail_offset: natural("tail-offset", &a.tail_offset)?,
        extra_seed_digits: a.extra_seed_digits,
        limits,
    };
    config.validate()?;

    let mut header = RunHeader::new(config.clone(), source.descriptor().clone());
    header.timestamp = timestamp(a.no_timestamp);
    let (built, failure) = match construct(&config, &mut source) {
        Ok(y) => (y, None),
        Err(f) => (f.partial, Some(f.error)),
    };
    header.partial = failure.is_some();
    write_outputs(&header, &built, &a.out_digits, &a.out_cert)?;

    for c in &built.certificates {
        writeln!(
            out,
            "block {}: b = {}, n = {}, q_n has {} bits, q_(n+3) = {}^{}, k_i = {}, ℓ4 has {} bits, tail bound {}",
            c.i,
            c.b,
            c.n,
            c.q_before[1].bits(),
            c.b,
            c.k,
            c.k_i,
            c.ell[3].bits(),
            if c.tail_bound_met { "met" } else { "unmet" }
        )?;
    }
    writeln!(out, "{} digits written to {}", built.digits.len(), a.out_digits.display())?;
    match failure {
        None => Ok(EXIT_OK),
        Some(e) => {
            writeln!(err, "error: {e}")?;
            writeln!(err, "partial output written ({} complete blocks)", built.certificates.len())?;
            Ok(exit_code(&e))
        }
    }
}

fn write_outputs(header: &RunHeader, y: &ConstructedNumber, digits: &PathBuf, cert: &PathBuf) -> Result<()> {
    let comments = vec![
        format!("abnormal-forge digits v{}", header.version),
        format!("header: {}", serde_json::to_string(header)?),
    ];
    write_digit_file(digits, &comments, &y.digits)?;
    CertificateFile {
        header: header.clone(),
        blocks: y.certificates.clone(),
    }
    .write(cert)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let file = CertificateFile::read(&a.cert)?;
    let (_, digits) = read_digit_file(&a.digits)?;
    let opts = VerifyOptions {
        window: a.sample_window,
        limits: Limits {
            search_limit: file.header.config.limits.search_limit,
            ..Limits::from_env()
        },
    };
    let report = verify_run(&file.header, &file.blocks, &digits, &opts)?;
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    Ok(if report.failed() {
        EXIT_VERIFY_FAILED
    } else if report.inconclusive() {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    })
}

fn parse_strings(text: &str) -> Result<Vec<Vec<u64>>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.split(',')
                .map(|d| match d.trim().parse::<u64>() {
                    Ok(v) if v >= 1 => Ok(v),
                    _ => Err(Error::input(None, format!("`{d}` is not a positive digit"))),
                })
                .collect()
        })
        .collect()
}

fn cmd_analyze(a: AnalyzeCommand, out: &mut dyn Write) -> Result<i32> {
    match a {
        AnalyzeCommand::Cf { digits, strings, prefix } => {
            let (_, d) = read_digit_file(&digits)?;
            let n = prefix.unwrap_or(d.len());
            let report = cf_normality_report(&d, &parse_strings(&strings)?, n)?;
            serde_json::to_writer_pretty(&mut *out, &report)?;
        }
        AnalyzeCommand::Base {
            num,
            den,
            base,
            places,
            symbol,
            convention,
        } => {
            let p = natural("num", &num)?;
            let q = natural("den", &den)?;
            if q.is_zero() {
                return Err(Error::input(None, "--den must be positive"));
            }
            let convention = match convention.as_str() {
                "terminating" => Convention::Terminating,
                "non-terminating" => Convention::NonTerminating,
                other => return Err(Error::input(None, format!("unknown convention `{other}`"))),
            };
            let x = Rational::new(BigInt::from(p), BigInt::from(q));
            let expansion = base_expansion(&x, base, places, convention)?;
            let run = max_run(&expansion.digits, &symbol, places)?;
            let report = json!({
                "base": base,
                "places": places,
                "convention": convention,
                "digits": expansion.to_string(),
                "symbol": symbol,
                "longest_run": run.longest_run,
                "differing": run.differing,
            });
            serde_json::to_writer_pretty(&mut *out, &report)?;
        }
    }
    writeln!(out)?;
    Ok(EXIT_OK)
}

fn parse_constraint(text: &str) -> Result<ResidueConstraint> {
    let bad = || Error::input(None, format!("`{text}` is not of the form m:r1,r2 or m:!r1,r2"));
    let (m, rest) = text.split_once(':').ok_or_else(bad)?;
    let modulus = natural("mod", m)?;
    let (except, list) = match rest.strip_prefix('!') {
        Some(l) => (true, l),
        None => (false, rest),
    };
    let residues = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|r| natural("mod", r))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidueConstraint {
        modulus,
        allowed: if except { Residues::AllExcept(residues) } else { Residues::Only(residues) },
    })
}

fn cmd_nt(a: NtCommand, out: &mut dyn Write) -> Result<i32> {
    let limits = Limits::from_env();
    match a {
        NtCommand::Dlog { g, h, p } => {
            let k = discrete_log_with(&natural("g", &g)?, &natural("h", &h)?, &natural("p", &p)?, &limits)?;
            writeln!(out, "{k}")?;
        }
        NtCommand::Primroot { g, p } => {
            let yes = is_primitive_root_with(&natural("g", &g)?, &natural("p", &p)?, &limits)?;
            writeln!(out, "{yes}")?;
        }
        NtCommand::Artin { g, f, a, search_limit } => {
            let limits = Limits { search_limit, ..limits };
            let hit = find_artin_prime_with(&natural("g", &g)?, &natural("f", &f)?, &natural("a", &a)?, &limits)?;
            serde_json::to_writer_pretty(&mut *out, &hit)?;
            writeln!(out)?;
        }
        NtCommand::Kronecker { d, n } => {
            writeln!(out, "{}", kronecker_symbol(&integer("d", &d)?, &natural("n", &n)?))?;
        }
        NtCommand::Lenstra { g, f, a } => {
            let v = lenstra_finiteness(&natural("g", &g)?, &natural("f", &f)?, &natural("a", &a)?)?;
            serde_json::to_writer_pretty(&mut *out, &v)?;
            writeln!(out)?;
        }
        NtCommand::Crt { constraints } => {
            let cs = constraints.iter().map(|c| parse_constraint(c)).collect::<Result<Vec<_>>>()?;
            writeln!(out, "{}", crt_min_solution(&cs)?)?;
        }
    }
    Ok(EXIT_OK)
}

