// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! `pulseforge` command-line tool.

mod parse;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use parse::{Angle, C1Choice};
use pulseforge::analysis::{self, SweepConfig};
use pulseforge::exec::{parse_thread_cap, with_thread_cap};
use pulseforge::families::{self, CorpseIndices, TwinIndices};
use pulseforge::solver::{self, Branch, Parity, TargetRotation, WindingNumbers};
use pulseforge::su2::{Pulse, QubitState};
use pulseforge::{SequenceDocument, SweepTable, VerifyReport};

const THREADS_VAR: &str = "PULSEFORGE_THREADS";

#[derive(Parser)]
#[command(name = "pulseforge", version, about = "Off-resonance robust three-pulse composite rotations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the sequence at a manifold point and print it as JSON.
    Synth(SynthArgs),
    /// Build a CORPSE-family member and print it as JSON.
    Family(FamilyArgs),
    /// Print the admissible c1 interval for a target angle.
    Bounds(BoundsArgs),
    /// Check a JSON sequence: robustness residual, product and infidelity.
    Verify(VerifyArgs),
    /// Gate infidelity across the c1 interval, as CSV.
    SweepInfidelity(SweepArgs),
    /// State infidelity across the c1 interval, as CSV.
    SweepState(SweepStateArgs),
    /// Minimum operation time against cos(θ/2), as CSV.
    SweepTime(SweepTimeArgs),
    /// Log-log slope of gate infidelity against f, as CSV.
    Scaling(ScalingArgs),
}

#[derive(Args)]
struct TargetArgs {
    /// Target rotation angle θ in (0, 2π); accepts pi, pi/2, 3pi/4, ...
    #[arg(long, value_parser = parse::angle, allow_hyphen_values = true)]
    theta: Angle,
    /// Target phase φ.
    #[arg(long, value_parser = parse::angle, allow_hyphen_values = true, default_value = "0")]
    phi: Angle,
    /// Read bare numeric angles as degrees.
    #[arg(long)]
    degrees: bool,
}

impl TargetArgs {
    fn target(&self) -> anyhow::Result<TargetRotation> {
        Ok(TargetRotation::new(
            self.theta.radians(self.degrees),
            self.phi.radians(self.degrees),
        )?)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.output {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

#[derive(Args)]
struct SynthArgs {
    #[command(flatten)]
    target: TargetArgs,
    /// Manifold coordinate c1, or `upper` / `lower` for an interval edge.
    #[arg(long, value_parser = parse::c1, allow_hyphen_values = true)]
    c1: C1Choice,
    #[arg(long, default_value_t = 0)]
    n1: u32,
    #[arg(long, default_value_t = 0)]
    n2: u32,
    #[arg(long, default_value_t = 0)]
    n3: u32,
    /// Sign of sin(φ2 − φ1): `+` or `-`.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    branch: Branch,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FamilyName {
    Corpse,
    ShortCorpse,
    FundamentalCorpse,
    Twin,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    name: FamilyName,
    #[command(flatten)]
    target: TargetArgs,
    /// CORPSE indices (default 1, 1, 0).
    #[arg(long, default_value_t = 1)]
    nu1: u32,
    #[arg(long, default_value_t = 1)]
    nu2: u32,
    #[arg(long, default_value_t = 0)]
    nu3: u32,
    /// Twin indices (default 1, 0, 1).
    #[arg(long, default_value_t = 1)]
    mu1: u32,
    #[arg(long, default_value_t = 0)]
    mu2: u32,
    #[arg(long, default_value_t = 1)]
    mu3: u32,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, value_parser = parse::angle, allow_hyphen_values = true)]
    theta: Angle,
    /// Parity of n1 + n2 + n3.
    #[arg(long, value_parser = parse::parity, default_value = "0")]
    parity: u32,
    #[arg(long)]
    degrees: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON sequence file; stdin when omitted or `-`.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Off-resonance magnitude for the reported infidelity.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    f: f64,
}

#[derive(Args)]
struct CsvArgs {
    /// Omit the leading `#` metadata lines.
    #[arg(long)]
    no_meta: bool,
    #[command(flatten)]
    out: OutputArgs,
}

impl CsvArgs {
    fn emit(&self, table: &SweepTable) -> anyhow::Result<()> {
        self.out.emit(&table.to_csv(!self.no_meta))
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_parser = parse::angle, allow_hyphen_values = true)]
    theta: Angle,
    #[arg(long)]
    degrees: bool,
    /// Winding numbers `n1,n2,n3`.
    #[arg(long, value_parser = parse::windings, default_value = "0,0,0")]
    n: WindingNumbers,
    #[arg(long, allow_hyphen_values = true)]
    f: f64,
    /// Grid points over the closed c1 interval.
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    branch: Branch,
    #[command(flatten)]
    csv: CsvArgs,
}

impl SweepArgs {
    fn config(&self) -> SweepConfig {
        SweepConfig::new(self.theta.radians(self.degrees), self.n, self.f, self.points).with_branch(self.branch)
    }
}

#[derive(Args)]
struct SweepStateArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Initial state: 0, 1, +, -, +i or -i.
    #[arg(long, value_parser = parse::state, default_value = "0", allow_hyphen_values = true)]
    psi: QubitState,
}

#[derive(Args)]
struct SweepTimeArgs {
    /// Total winding number n.
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Evenly spaced c values strictly inside (-1, 1).
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[command(flatten)]
    csv: CsvArgs,
}

#[derive(Args)]
struct ScalingArgs {
    /// JSON sequence to measure.
    #[arg(long, short, conflicts_with = "theta", required_unless_present = "theta")]
    input: Option<PathBuf>,
    /// Measure a single uncorrected pulse of this angle instead.
    #[arg(long, value_parser = parse::angle, allow_hyphen_values = true)]
    theta: Option<Angle>,
    #[arg(long)]
    degrees: bool,
    #[arg(long, default_value_t = 1e-3)]
    f_min: f64,
    #[arg(long, default_value_t = 1e-2)]
    f_max: f64,
    #[arg(long, default_value_t = analysis::DEFAULT_SCALING_POINTS)]
    points: usize,
    #[command(flatten)]
    csv: CsvArgs,
}

fn read_document(input: Option<&PathBuf>) -> anyhow::Result<SequenceDocument> {
    let text = match input {
        Some(path) if path.as_os_str() != "-" => {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            s
        }
    };
    Ok(SequenceDocument::from_json(&text)?)
}

fn synth(args: &SynthArgs) -> anyhow::Result<()> {
    let target = args.target.target()?;
    let windings = WindingNumbers::new(args.n1, args.n2, args.n3);
    let bounds = solver::c1_bounds(target.c(), windings.parity());
    let c1 = match args.c1 {
        C1Choice::Value(v) => v,
        C1Choice::Lower => bounds.lower,
        C1Choice::Upper => bounds.upper,
    };
    let seq = solver::build_sequence(target, c1, windings, args.branch)?;
    args.out.emit(&(SequenceDocument::from(&seq).to_json() + "\n"))
}

fn family(args: &FamilyArgs) -> anyhow::Result<()> {
    let target = args.target.target()?;
    let seq = match args.name {
        FamilyName::Corpse => families::corpse(target, CorpseIndices::new(args.nu1, args.nu2, args.nu3))?,
        FamilyName::ShortCorpse => families::short_corpse(target)?,
        FamilyName::FundamentalCorpse => families::fundamental_corpse(target)?,
        FamilyName::Twin => families::twin_corpse(target, TwinIndices::new(args.mu1, args.mu2, args.mu3)?)?,
    };
    args.out.emit(&(SequenceDocument::from(&seq).to_json() + "\n"))
}

fn bounds(args: &BoundsArgs) -> anyhow::Result<()> {
    let target = TargetRotation::new(args.theta.radians(args.degrees), 0.0)?;
    let b = solver::c1_bounds(target.c(), Parity::of(args.parity));
    println!("c1_lower {}", b.lower);
    println!("c1_upper {}", b.upper);
    Ok(())
}

fn verify(args: &VerifyArgs) -> anyhow::Result<bool> {
    let doc = read_document(args.input.as_ref())?;
    let report = doc.verify(args.f)?;
    println!("robustness_residual {:e}", report.robustness_residual);
    println!("product_distance {:e}", report.product_distance);
    println!("gate_infidelity {:e} (f = {})", report.gate_infidelity, report.f);
    let ok = report.passed();
    println!(
        "{} (thresholds: residual {:e}, distance {:e})",
        if ok { "PASS" } else { "FAIL" },
        VerifyReport::RESIDUAL_THRESHOLD,
        VerifyReport::DISTANCE_THRESHOLD
    );
    Ok(ok)
}

fn scaling(args: &ScalingArgs) -> anyhow::Result<()> {
    let pulses: Vec<Pulse> = match (&args.input, args.theta) {
        (Some(path), _) => read_document(Some(path))?.pulses()?.to_vec(),
        (None, Some(theta)) => vec![Pulse::new(theta.radians(args.degrees), 0.0)?],
        (None, None) => bail!("either --input or --theta is required"),
    };
    let fit = analysis::scaling_exponent(&pulses, args.f_min, args.f_max, args.points)?;
    eprintln!("exponent {:.6} (rms residual {:.2e})", fit.exponent, fit.residual);
    args.csv.emit(&fit.to_table()?)
}

fn run(command: &Command) -> anyhow::Result<bool> {
    match command {
        Command::Synth(a) => synth(a)?,
        Command::Family(a) => family(a)?,
        Command::Bounds(a) => bounds(a)?,
        Command::Verify(a) => return verify(a),
        Command::SweepInfidelity(a) => a.csv.emit(&analysis::infidelity_sweep(&a.config())?)?,
        Command::SweepState(a) => a
            .sweep
            .csv
            .emit(&analysis::state_infidelity_sweep(&a.sweep.config(), &a.psi)?)?,
        Command::SweepTime(a) => a
            .csv
            .emit(&analysis::time_sweep(a.n, &analysis::open_unit_grid(a.points))?)?,
        Command::Scaling(a) => scaling(a)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = match std::env::var(THREADS_VAR) {
        Ok(v) => match parse_thread_cap(&v) {
            Ok(n) => Some(n),
            Err(e) => {
                eprintln!("error: {THREADS_VAR}: {e}");
                return ExitCode::from(2);
            }
        },
        Err(_) => None,
    };
    let outcome = with_thread_cap(cap, || run(&cli.command)).map_err(anyhow::Error::from);
    match outcome.and_then(|r| r) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
