//! Command-line front end.
//!
//! [`run`] parses arguments, executes one command and returns what the
//! process should print and its exit status, so the binary stays a thin
//! wrapper and the commands can be exercised in-process.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modexp::claim_audit;
use crate::pipeline::{
    bit_length, builtin_demos, choose_q, demo_audit, run_shor, success_sweep, OrderFinder, Outcome,
    SampleRecord, SampleStatus, SamplingSource, ShorConfig, ShorReport, SweepConfig,
};
use crate::spectrum::{analytic_distribution, simulated_distribution_in};
use crate::state::{RegisterLayout, DEFAULT_MAX_QUBITS};

/// Environment variable overriding the maximum total qubit count.
pub const MAX_QUBITS_ENV: &str = "SHORSIM_MAX_QUBITS";

/// Version tag carried by every JSON document.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Parser)]
#[command(name = "shorsim", version, about = "Order-finding simulator with gate accounting")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor n end to end.
    Factor(FactorArgs),
    /// Run only the order-finding loop for a fixed base.
    Order(OrderArgs),
    /// Dump the register-1 outcome distribution.
    Spectrum(SpectrumArgs),
    /// Check published demonstrations' register widths.
    AuditDemos(JsonFlag),
    /// Compare staged modular exponentiation against direct enumeration.
    ClaimAudit(ClaimAuditArgs),
    /// Order-recovery success rate over register-1 widths.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct JsonFlag {
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub x: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=62))]
    pub s: Option<u16>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_samples: u32,
    /// Bases to try when --x is not given.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
    /// Sample from the closed-form distribution instead of simulating.
    #[arg(long)]
    pub analytic: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub x: u64,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=62))]
    pub s: Option<u16>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_samples: u32,
    #[arg(long)]
    pub analytic: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub x: u64,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=62))]
    pub s: Option<u16>,
    /// Closed-form evaluation (default).
    #[arg(long, conflicts_with = "simulated")]
    pub analytic: bool,
    /// Full state-vector simulation.
    #[arg(long)]
    pub simulated: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ClaimAuditArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub x: u64,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=62))]
    pub s: u16,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub x: u64,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=62))]
    pub s_min: u16,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=62))]
    pub s_max: u16,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_samples: u32,
    #[arg(long)]
    pub analytic: bool,
    #[arg(long)]
    pub json: bool,
}

/// What the process should print, and its exit status.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn usage(stderr: String) -> Self {
        Self {
            stdout: String::new(),
            stderr,
            code: 1,
        }
    }
}

/// JSON envelope: every document names its kind and schema version.
#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    kind: &'a str,
    schema_version: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

fn to_json<T: Serialize>(kind: &str, body: &T) -> String {
    let doc = Document {
        kind,
        schema_version: SCHEMA_VERSION,
        body,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("reports serialize");
    text.push('\n');
    text
}

fn source(analytic: bool) -> SamplingSource {
    if analytic {
        SamplingSource::Analytic
    } else {
        SamplingSource::Simulated
    }
}

/// Reads the capacity override; `None` means the default.
pub fn max_qubits_from_env(value: Option<&str>) -> std::result::Result<usize, String> {
    match value {
        None => Ok(DEFAULT_MAX_QUBITS),
        Some(text) => match text.trim().parse::<usize>() {
            Ok(v) if (2..=40).contains(&v) => Ok(v),
            _ => Err(format!(
                "{MAX_QUBITS_ENV} must be an integer between 2 and 40, got {text:?}"
            )),
        },
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, max_qubits_env: Option<&str>) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CliOutput::ok(text)
                }
                _ => CliOutput::usage(text),
            };
        }
    };
    let max_qubits = match max_qubits_from_env(max_qubits_env) {
        Ok(v) => v,
        Err(msg) => return CliOutput::usage(format!("error: {msg}\n")),
    };
    match execute(cli.command, max_qubits) {
        Ok(out) => out,
        Err(err) => CliOutput::usage(format!("error: {err}\n")),
    }
}

pub fn execute(command: Command, max_qubits: usize) -> Result<CliOutput> {
    match command {
        Command::Factor(args) => cmd_factor(args, max_qubits),
        Command::Order(args) => cmd_order(args, max_qubits),
        Command::Spectrum(args) => cmd_spectrum(args, max_qubits),
        Command::AuditDemos(args) => cmd_audit_demos(args),
        Command::ClaimAudit(args) => cmd_claim_audit(args, max_qubits),
        Command::Sweep(args) => cmd_sweep(args, max_qubits),
    }
}

fn describe_sample(i: usize, sample: &SampleRecord) -> String {
    let candidate = match (sample.d, sample.r) {
        (Some(d), Some(r)) => format!("{d}/{r}"),
        _ => "-".to_string(),
    };
    let status = match sample.status {
        SampleStatus::NoCandidate => "no candidate".to_string(),
        SampleStatus::Rejected => "rejected".to_string(),
        SampleStatus::Verified => "verified".to_string(),
        SampleStatus::VerifiedByLcm { partner, lcm } => {
            format!("verified via lcm with {partner} = {lcm}")
        }
    };
    format!("  sample {:>2}: c = {:<8} {candidate:<10} {status}\n", i + 1, sample.c)
}

fn render_shor(report: &ShorReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {}", report.n);
    match report.method {
        crate::pipeline::Method::EvenModulus => {
            let _ = writeln!(out, "n is even; no simulation needed");
        }
        crate::pipeline::Method::PerfectPower => {
            let _ = writeln!(out, "n is a perfect power; no simulation needed");
        }
        crate::pipeline::Method::SharedFactor => {
            let _ = writeln!(
                out,
                "base x = {} shares a factor with n",
                report.x.unwrap_or_default()
            );
        }
        crate::pipeline::Method::OrderFinding => {
            let _ = writeln!(
                out,
                "base x = {}, register-1 s = {} (q = {}), register-2 width {}",
                report.x.unwrap_or_default(),
                report.s,
                report.q,
                report.ell
            );
            for (i, sample) in report.samples.iter().enumerate() {
                out.push_str(&describe_sample(i, sample));
            }
            if let Some(r) = report.verified_r {
                let _ = writeln!(out, "order r = {r}");
            }
            if let Some(h) = report.half_power {
                let _ = writeln!(out, "x^(r/2) mod n = {h}");
            }
            let _ = writeln!(
                out,
                "controlled stages = {}, amplitude operations = {}",
                report.stats.controlled_stage_applications, report.stats.amplitude_operations
            );
        }
    }
    if let Some([a, b]) = report.factors {
        let _ = writeln!(out, "factors: {a} x {b}");
    }
    let outcome = match report.outcome {
        Outcome::Success => "success",
        Outcome::OddOrder => "odd order",
        Outcome::TrivialRoot => "trivial square root (x^(r/2) = -1 mod n)",
        Outcome::Exhausted => "sample budget exhausted",
    };
    let _ = writeln!(out, "outcome: {outcome}");
    out
}

fn cmd_factor(args: FactorArgs, max_qubits: usize) -> Result<CliOutput> {
    let config = ShorConfig {
        n: args.n,
        x: args.x,
        s_override: args.s.map(usize::from),
        seed: args.seed,
        max_samples: args.max_samples as usize,
        trials: args.trials as usize,
        max_qubits,
        source: source(args.analytic),
    };
    let report = run_shor(&config)?;
    let stdout = if args.json {
        to_json("shor_report", &report)
    } else {
        render_shor(&report)
    };
    let code = if report.factors.is_some() { 0 } else { 2 };
    Ok(CliOutput {
        stdout,
        stderr: String::new(),
        code,
    })
}

#[derive(Debug, Serialize)]
struct OrderReport {
    n: u64,
    x: u64,
    s: usize,
    q: u64,
    ell: usize,
    source: SamplingSource,
    samples: Vec<SampleRecord>,
    verified_r: Option<u64>,
    stats: crate::gates::CircuitStats,
}

fn width_or_default(n: u64, s: Option<u16>) -> Result<usize> {
    Ok(match s {
        Some(s) => s as usize,
        None => choose_q(n)?.s,
    })
}

fn cmd_order(args: OrderArgs, max_qubits: usize) -> Result<CliOutput> {
    let s = width_or_default(args.n, args.s)?;
    let finder = OrderFinder::new(args.n, args.x, s, source(args.analytic), max_qubits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let search = finder.search(args.max_samples as usize, &mut rng)?;
    let report = OrderReport {
        n: args.n,
        x: args.x,
        s,
        q: 1 << s,
        ell: finder.layout().ell(),
        source: source(args.analytic),
        samples: search.samples,
        verified_r: search.verified_r,
        stats: search.stats,
    };
    let stdout = if args.json {
        to_json("order_report", &report)
    } else {
        let mut out = format!(
            "n = {}, x = {}, s = {} (q = {})\n",
            report.n, report.x, report.s, report.q
        );
        for (i, sample) in report.samples.iter().enumerate() {
            out.push_str(&describe_sample(i, sample));
        }
        match report.verified_r {
            Some(r) => {
                let _ = writeln!(out, "order r = {r}");
            }
            None => out.push_str("order not found\n"),
        }
        out
    };
    let code = if report.verified_r.is_some() { 0 } else { 2 };
    Ok(CliOutput {
        stdout,
        stderr: String::new(),
        code,
    })
}

#[derive(Debug, Serialize)]
struct SpectrumDump {
    n: u64,
    x: u64,
    s: usize,
    q: usize,
    r: u64,
    mode: &'static str,
    /// Probability of each register-1 outcome `c`, indexed by `c`.
    marginal: Vec<f64>,
}

fn cmd_spectrum(args: SpectrumArgs, max_qubits: usize) -> Result<CliOutput> {
    let s = width_or_default(args.n, args.s)?;
    if s >= usize::BITS as usize - 1 {
        return Err(Error::CapacityExceeded {
            requested: s,
            max: max_qubits,
        });
    }
    let (dist, mode) = if args.simulated {
        let layout = RegisterLayout::with_max_qubits(s, bit_length(args.n), max_qubits)?;
        (simulated_distribution_in(layout, args.x, args.n)?, "simulated")
    } else {
        // The closed form needs no state vector, but keep q addressable.
        if s > max_qubits {
            return Err(Error::CapacityExceeded {
                requested: s,
                max: max_qubits,
            });
        }
        (analytic_distribution(args.n, args.x, 1 << s)?, "analytic")
    };
    let dump = SpectrumDump {
        n: args.n,
        x: args.x,
        s,
        q: dist.q,
        r: dist.r,
        mode,
        marginal: dist.marginal,
    };
    let stdout = if args.json {
        to_json("spectrum", &dump)
    } else {
        let mut out = format!(
            "n = {}, x = {}, q = {}, r = {} ({mode})\n{:>8}  probability\n",
            dump.n, dump.x, dump.q, dump.r, "c"
        );
        for (c, p) in dump.marginal.iter().enumerate() {
            if *p > 1e-9 {
                let _ = writeln!(out, "{c:>8}  {p:.9}");
            }
        }
        out
    };
    Ok(CliOutput::ok(stdout))
}

#[derive(Debug, Serialize)]
struct DemoAuditDoc {
    rows: Vec<crate::pipeline::DemoAuditRow>,
}

fn cmd_audit_demos(args: JsonFlag) -> Result<CliOutput> {
    let rows = demo_audit(&builtin_demos())?;
    let stdout = if args.json {
        to_json("demo_audit", &DemoAuditDoc { rows })
    } else {
        let mut out = format!(
            "{:<16} {:<6} {:>4} {:>3} {:>3} {:>6} {:>9} {:>12}\n",
            "demonstration", "ref", "n", "s1", "s2", "q_ok", "width_ok", "required_s1"
        );
        for r in &rows {
            let _ = writeln!(
                out,
                "{:<16} {:<6} {:>4} {:>3} {:>3} {:>6} {:>9} {:>12}",
                r.label, r.citation, r.n, r.s1, r.s2, r.q_ok, r.width_ok, r.required_s1
            );
        }
        out
    };
    Ok(CliOutput::ok(stdout))
}

fn cmd_claim_audit(args: ClaimAuditArgs, max_qubits: usize) -> Result<CliOutput> {
    let layout = RegisterLayout::with_max_qubits(args.s as usize, bit_length(args.n), max_qubits)?;
    let report = claim_audit(layout, args.x, args.n)?;
    let stdout = if args.json {
        to_json("claim_audit", &report)
    } else {
        format!(
            "n = {}, x = {}, t = {}, ell = {}\n\
             stages applied        = {}\n\
             claimed invocations   = {}\n\
             amplitude operations  = {}\n\
             max |circuit - oracle| = {:.3e}  equal = {}\n\
             subset linearity      = {:.3e} over {} subsets  ok = {}\n",
            report.n,
            report.x,
            report.t,
            report.ell,
            report.stage_applications,
            report.claimed_invocations,
            report.amplitude_operations,
            report.max_amplitude_deviation,
            report.equal,
            report.linearity_max_deviation,
            report.linearity_subsets,
            report.linearity_ok,
        )
    };
    Ok(CliOutput::ok(stdout))
}

fn cmd_sweep(args: SweepArgs, max_qubits: usize) -> Result<CliOutput> {
    if args.s_min > args.s_max {
        return Ok(CliOutput::usage(format!(
            "error: --s-min ({}) exceeds --s-max ({})\n",
            args.s_min, args.s_max
        )));
    }
    let config = SweepConfig {
        n: args.n,
        x: args.x,
        s_values: (args.s_min..=args.s_max).map(usize::from).collect(),
        trials: args.trials as usize,
        max_samples: args.max_samples as usize,
        source: source(args.analytic),
        max_qubits,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let table = success_sweep(&config, &mut rng)?;
    let stdout = if args.json {
        to_json("sweep", &table)
    } else {
        let mut out = format!(
            "n = {}, x = {}, r = {}, up to {} samples per trial\n{:>3} {:>8} {:>7} {:>10} {:>12}\n",
            table.n, table.x, table.r, table.max_samples, "s", "q", "trials", "success", "first-sample"
        );
        for row in &table.rows {
            let _ = writeln!(
                out,
                "{:>3} {:>8} {:>7} {:>10.3} {:>12.3}",
                row.s, row.q, row.trials, row.success_rate, row.first_sample_rate
            );
        }
        out
    };
    Ok(CliOutput::ok(stdout))
}
