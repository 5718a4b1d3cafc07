use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use domb_core::congruence::{sweep, CheckId, CheckOptions, EngineKind, SumOrder};
use domb_core::exact::{domb_cached, liu_sum, LiuSign};
use domb_core::identity::{run_identities, IdentityConfig, IdentityId};
use domb_core::report::{write_output, Format, IdentityReport, IdentityRunConfig, SweepConfig};
use domb_core::ExactInteger;
use num_traits::One;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

/// Verify Domb-number supercongruences and the identities behind them.
#[derive(Parser)]
#[command(name = "domb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check congruences for every prime in a range and write a report.
    Verify(VerifyArgs),
    /// Check the finite identities exactly and write a report.
    Identity(IdentityArgs),
    /// Print the first terms of a sequence.
    Seq(SeqArgs),
}

#[derive(Args)]
struct Output {
    /// Report destination; `-` is stdout.
    #[arg(long, default_value = "-")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Zero all timing fields so reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check family, comma-separated list, or `all`.
    #[arg(long, default_value = "all", value_delimiter = ',', value_parser = parse_check)]
    check: Vec<CheckSel>,
    #[arg(long, default_value_t = 5)]
    pmin: u64,
    #[arg(long, default_value_t = 100)]
    pmax: u64,
    #[arg(long, value_enum, default_value_t = EngineArg::Exact)]
    engine: EngineArg,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Also run randomized p-adic arithmetic cross-checks with this seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Order in which sums are accumulated.
    #[arg(long, value_enum, default_value_t = OrderArg::Forward)]
    sum_order: OrderArg,
    /// Deliberately corrupt right-hand sides (negative control).
    #[arg(long, hide = true)]
    perturb: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct IdentityArgs {
    /// Identity family, comma-separated list, or `all`.
    #[arg(long, default_value = "all", value_delimiter = ',', value_parser = parse_identity)]
    id: Vec<IdSel>,
    /// Upper bound for every family's parameter (default: per-family ranges).
    #[arg(long)]
    nmax: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SeqArgs {
    /// `domb`, `liu+` or `liu-`.
    #[arg(long, value_parser = parse_seq)]
    name: SeqName,
    #[arg(long, default_value_t = 10)]
    count: u64,
}

#[derive(Clone, Copy)]
enum CheckSel {
    All,
    One(CheckId),
}

#[derive(Clone, Copy)]
enum IdSel {
    All,
    One(IdentityId),
}

#[derive(Clone, Copy)]
enum SeqName {
    Domb,
    Liu(LiuSign),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Exact,
    Fast,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Forward,
    Backward,
    Pairwise,
}

fn parse_check(s: &str) -> Result<CheckSel, String> {
    if s == "all" {
        return Ok(CheckSel::All);
    }
    s.parse().map(CheckSel::One).map_err(|_| {
        let names: Vec<_> = CheckId::ALL.iter().map(|c| c.name()).collect();
        format!("unknown check '{s}' (expected all, {})", names.join(", "))
    })
}

fn parse_identity(s: &str) -> Result<IdSel, String> {
    if s == "all" {
        return Ok(IdSel::All);
    }
    s.parse().map(IdSel::One).map_err(|_| {
        let names: Vec<_> = IdentityId::ALL.iter().map(|c| c.name()).collect();
        format!("unknown identity '{s}' (expected all, {})", names.join(", "))
    })
}

fn parse_seq(s: &str) -> Result<SeqName, String> {
    match s {
        "domb" => Ok(SeqName::Domb),
        "liu+" => Ok(SeqName::Liu(LiuSign::Plus)),
        "liu-" | "liu−" => Ok(SeqName::Liu(LiuSign::Minus)),
        _ => Err(format!("unknown sequence '{s}' (expected domb, liu+, liu-)")),
    }
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

impl From<EngineArg> for EngineKind {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Exact => EngineKind::Exact,
            EngineArg::Fast => EngineKind::Fast,
            EngineArg::Both => EngineKind::Both,
        }
    }
}

impl From<OrderArg> for SumOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Forward => SumOrder::Forward,
            OrderArg::Backward => SumOrder::Backward,
            OrderArg::Pairwise => SumOrder::Pairwise,
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn emit(out: &Path, bytes: &[u8]) -> Option<ExitCode> {
    match write_output(out, bytes) {
        Ok(()) => None,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", out.display());
            Some(ExitCode::from(EXIT_IO))
        }
    }
}

fn verdict(failed: usize) -> ExitCode {
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn cmd_verify(a: VerifyArgs) -> ExitCode {
    if a.pmin > a.pmax {
        return usage(format!("--pmin {} exceeds --pmax {}", a.pmin, a.pmax));
    }
    if a.jobs == Some(0) {
        return usage("--jobs must be at least 1");
    }
    let mut checks: Vec<CheckId> = Vec::new();
    for sel in &a.check {
        match sel {
            CheckSel::All => checks.extend(CheckId::ALL),
            CheckSel::One(c) => checks.push(*c),
        }
    }
    checks.sort();
    checks.dedup();
    let config = SweepConfig {
        checks,
        pmin: a.pmin,
        pmax: a.pmax,
        engine: a.engine.into(),
        jobs: a.jobs,
        seed: a.seed,
        options: CheckOptions { perturb: a.perturb, sum_order: a.sum_order.into() },
        timing: !a.output.no_timing,
    };
    let report = match sweep(&config) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let bytes = match report.render(a.output.format.into()) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_IO);
        }
    };
    if let Some(code) = emit(&a.output.out, &bytes) {
        return code;
    }
    let t = report.summary.total;
    eprintln!("{} passed, {} failed, {} excluded", t.passed, t.failed, t.excluded);
    verdict(report.failed())
}

fn cmd_identity(a: IdentityArgs) -> ExitCode {
    let mut ids: Vec<IdentityId> = Vec::new();
    for sel in &a.id {
        match sel {
            IdSel::All => ids.extend(IdentityId::ALL),
            IdSel::One(i) => ids.push(*i),
        }
    }
    ids.sort();
    ids.dedup();
    let ranges = a.nmax.map_or_else(IdentityConfig::default, IdentityConfig::uniform);
    let start = Instant::now();
    let checks = run_identities(&ids, &ranges);
    let elapsed = if a.output.no_timing { 0.0 } else { start.elapsed().as_secs_f64() * 1e3 };
    let report = IdentityReport::new(IdentityRunConfig { ids, ranges }, &checks, elapsed);
    let bytes = match report.render(a.output.format.into()) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_IO);
        }
    };
    if let Some(code) = emit(&a.output.out, &bytes) {
        return code;
    }
    let t = report.summary.total;
    eprintln!("{} passed, {} failed", t.passed, t.failed);
    verdict(report.failed())
}

fn cmd_seq(a: SeqArgs) -> ExitCode {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    for i in 0..a.count {
        let value: ExactInteger = match a.name {
            SeqName::Domb => domb_cached(i),
            SeqName::Liu(sign) => {
                let v = liu_sum::<ExactInteger>(i + 1, sign);
                if !v.denom().is_one() {
                    eprintln!("error: term {} is not an integer: {v}", i + 1);
                    return ExitCode::from(EXIT_FAIL);
                }
                v.to_integer()
            }
        };
        if writeln!(out, "{value}").is_err() {
            return ExitCode::from(EXIT_IO);
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Identity(a) => cmd_identity(a),
        Command::Seq(a) => cmd_seq(a),
    }
}
