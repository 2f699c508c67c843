use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use unruh_cli::config::{
    parse_alpha_list, parse_config_text, parse_convention, parse_mode, PartialSweep, Spacing,
    DEFAULT_EPS_TAIL, DEFAULT_OMEGA,
};
use unruh_cli::csvout::{render_row, write_csv, CSV_HEADER};
use unruh_cli::figures::{figure_rows, FigureId};
use unruh_cli::selfcheck;
use unruh_cli::sweep::{evaluate_anyon_point, limit_row, run_sweep};
use unruh_core::anyonstat::{wu_occupation, WuQuery};
use unruh_core::measures::Measure;

/// Entanglement and coherence of accelerated boson, fermion, and anyon modes.
#[derive(Parser)]
#[command(name = "unruh", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one measure at a single parameter point
    Measure(MeasureArgs),
    /// Sweep a parameter grid and write a CSV dataset
    Sweep(SweepArgs),
    /// Emit one of the preset datasets (fig1 through fig7)
    Figure(FigureArgs),
    /// Solve the fractional-exclusion occupation equation
    Wu(WuArgs),
    /// Run the built-in invariant suite
    Selfcheck,
}

#[derive(Args)]
struct MeasureArgs {
    /// entropy, negativity, log_negativity, or coherence
    #[arg(long)]
    measure: Measure,
    /// Statistical parameter in [0, 1]
    #[arg(long)]
    alpha: f64,
    /// Proper acceleration (natural units)
    #[arg(long, conflicts_with = "a_inf")]
    a: Option<f64>,
    /// Evaluate the analytic infinite-acceleration limit instead
    #[arg(long)]
    a_inf: bool,
    #[arg(long, default_value_t = DEFAULT_OMEGA)]
    omega: f64,
    /// Truncation tail bound for the bosonic sector
    #[arg(long, default_value_t = DEFAULT_EPS_TAIL)]
    eps_tail: f64,
    /// Fixed truncation depth (overrides the tail-bound choice)
    #[arg(long)]
    n_max: Option<usize>,
    /// uniform or trace-weighted
    #[arg(long, default_value = "trace-weighted", value_parser = parse_mode)]
    mode: unruh_core::unruh::CombinationMode,
    /// sqrt-n or linear-n bosonic coupling
    #[arg(long, default_value = "sqrt-n", value_parser = parse_convention)]
    convention: unruh_core::unruh::CoeffConvention,
}

#[derive(Args)]
struct SweepArgs {
    /// Plain-text `key = value` config file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    measure: Option<Measure>,
    /// Comma-separated list of statistical parameters
    #[arg(long)]
    alpha_list: Option<String>,
    #[arg(long)]
    a_min: Option<f64>,
    #[arg(long)]
    a_max: Option<f64>,
    #[arg(long)]
    a_steps: Option<usize>,
    /// linear or log
    #[arg(long)]
    a_spacing: Option<Spacing>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    eps_tail: Option<f64>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<unruh_core::unruh::CombinationMode>,
    #[arg(long, value_parser = parse_convention)]
    convention: Option<unruh_core::unruh::CoeffConvention>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    /// fig1 through fig7
    id: FigureId,
    /// Output CSV path; defaults to <id>.csv
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct WuArgs {
    /// Fugacity-like argument exp((epsilon - mu) / kT)
    #[arg(long)]
    x: f64,
    /// Statistics parameter in [0, 1]
    #[arg(long)]
    alpha: f64,
    /// Relative residual tolerance
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

fn cmd_measure(args: MeasureArgs) -> Result<()> {
    let row = if args.a_inf {
        match limit_row("point", args.measure, args.alpha, args.omega) {
            Some(row) => row,
            None => bail!(
                "no closed-form infinite-acceleration value for {} at alpha = {} \
                 (available: every measure at alpha = 1, negativity measures at alpha = 0)",
                args.measure,
                args.alpha
            ),
        }
    } else {
        let a = args.a.context("either --a or --a-inf is required")?;
        evaluate_anyon_point(
            "point",
            args.measure,
            args.alpha,
            a,
            args.omega,
            args.eps_tail,
            args.n_max,
            args.mode,
            args.convention,
        )?
    };
    println!("{CSV_HEADER}");
    println!("{}", render_row(&row));
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let from_file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read config file {}", path.display()))?;
            parse_config_text(&text)
                .with_context(|| format!("invalid config file {}", path.display()))?
        }
        None => PartialSweep::default(),
    };
    let alpha_list = args
        .alpha_list
        .as_deref()
        .map(parse_alpha_list)
        .transpose()?;
    let from_flags = PartialSweep {
        measure: args.measure,
        alpha_list,
        a_min: args.a_min,
        a_max: args.a_max,
        a_steps: args.a_steps,
        a_spacing: args.a_spacing,
        omega: args.omega,
        eps_tail: args.eps_tail,
        n_max_override: args.n_max,
        mode: args.mode,
        convention: args.convention,
        output_path: args.output,
    };
    let cfg = from_file.merged_with(from_flags).build()?;
    let mut rows = run_sweep(&cfg, "custom")?;
    write_csv(&cfg.output_path, &mut rows)?;
    eprintln!("wrote {} rows to {}", rows.len(), cfg.output_path.display());
    Ok(())
}

fn cmd_figure(args: FigureArgs) -> Result<()> {
    let path = args
        .output
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", args.id.label())));
    let mut rows = figure_rows(args.id)?;
    write_csv(&path, &mut rows)?;
    eprintln!("wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}

fn cmd_wu(args: WuArgs) -> Result<()> {
    let q = WuQuery::from_x(args.x, args.alpha)?;
    let omega = unruh_core::anyonstat::wu_omega(q.x, q.alpha, args.tol)?;
    let n = wu_occupation(&q, args.tol)?;
    println!("omega = {omega:.16e}");
    println!("n = {n:.16e}");
    Ok(())
}

fn cmd_selfcheck() -> Result<()> {
    let results = selfcheck::run_all();
    let mut failed = 0usize;
    for r in &results {
        match &r.outcome {
            Ok(()) => println!("PASS {}", r.name),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}: {detail}", r.name);
            }
        }
    }
    if failed > 0 {
        bail!("{failed} of {} invariants failed", results.len());
    }
    println!("all {} invariants passed", results.len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Measure(args) => cmd_measure(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Wu(args) => cmd_wu(args),
        Command::Selfcheck => cmd_selfcheck(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
