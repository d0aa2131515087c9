mod commands;
mod config;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use symmwell::explorer::{configure_threads, Execution};

use crate::commands::Report;
use crate::config::{parse_config, BranchChoice, Config, ParKind, PathKind, SideChoice};
use crate::error::CliError;

/// Symmetrisation analysis of few-mode gain/loss Hamiltonians.
#[derive(Parser)]
#[command(name = "symmwell", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum with left/right eigenvectors and pairing (JSON).
    Eigs(Common),
    /// Reality residual, PT predicates and per-state balance (JSON).
    Check(Common),
    /// Spectral left/right symmetrisers and their residuals (JSON).
    Symmetrise {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        side: Option<SideChoice>,
    },
    /// Pauli-basis symmetriser family of a dimer (JSON).
    Solve2(Common),
    /// Gain/loss triples that make the trimer polynomial real (JSON).
    Solve3(Common),
    /// Dimer eigenvalues along a gain/loss parametrisation (CSV).
    Sweep2 {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        par: Option<ParKind>,
        #[arg(long, allow_negative_numbers = true)]
        gamma_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        gamma_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum)]
        branch: Option<BranchChoice>,
    },
    /// Anti-PT trimer `ε = (t, 0, -t)` sweep (CSV).
    Sweep3 {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_negative_numbers = true)]
        eps_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        eps_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        /// Use the `γ0 < 0` triple.
        #[arg(long)]
        negative: bool,
    },
    /// Dimer region map over `(γ1, γ2)` (CSV).
    Map2 {
        #[command(flatten)]
        common: Common,
        #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["LO", "HI"])]
        gamma1: Option<Vec<f64>>,
        #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["LO", "HI"])]
        gamma2: Option<Vec<f64>>,
        #[arg(long, num_args = 2, value_names = ["N1", "N2"])]
        resolution: Option<Vec<usize>>,
        #[arg(long, value_enum)]
        branch: Option<BranchChoice>,
    },
    /// Trimer region map over a coordinate plane of `ε` (CSV).
    Map3 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        fixed_axis: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        fixed_value: Option<f64>,
        #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["LO", "HI"])]
        u_range: Option<Vec<f64>>,
        #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["LO", "HI"])]
        v_range: Option<Vec<f64>>,
        #[arg(long, num_args = 2, value_names = ["NU", "NV"])]
        resolution: Option<Vec<usize>>,
        #[arg(long)]
        negative: bool,
    },
    /// Exceptional points along a one-parameter path (JSON).
    Ep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        path: Option<PathKind>,
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        order: Option<u8>,
        #[arg(long)]
        negative: bool,
        #[arg(long, num_args = 3, allow_negative_numbers = true)]
        origin: Option<Vec<f64>>,
        #[arg(long, num_args = 3, allow_negative_numbers = true)]
        direction: Option<Vec<f64>>,
    },
}

#[derive(Args)]
struct Common {
    /// JSON configuration document; flags override its fields.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Output file (standard output when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(short = 'J', long = "coupling")]
    coupling: Option<f64>,
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    eps: Option<Vec<f64>>,
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    gammas: Option<Vec<f64>>,
    #[arg(long)]
    tol: Option<f64>,
    /// Evaluate grids on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn load(&self) -> Result<Config, CliError> {
        let mut cfg = match &self.config {
            Some(path) => parse_config(&std::fs::read_to_string(path)?)?,
            None => Config::default(),
        };
        if let Some(j) = self.coupling {
            cfg.coupling = j;
        }
        if let Some(t) = self.tol {
            cfg.tolerance = t;
        }
        if let Some(e) = &self.eps {
            cfg.epsilons = Some(e.clone());
            cfg.wells = Some(e.len());
        }
        if let Some(g) = &self.gammas {
            cfg.gammas = Some(g.clone());
            cfg.wells = Some(g.len());
        }
        Ok(cfg)
    }

    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }
}

fn pair<T: Copy>(v: &Option<Vec<T>>) -> Option<[T; 2]> {
    v.as_ref().map(|v| [v[0], v[1]])
}

fn triple<T: Copy>(v: &Option<Vec<T>>) -> Option<[T; 3]> {
    v.as_ref().map(|v| [v[0], v[1], v[2]])
}

fn run(command: Command) -> Result<(Report, Option<PathBuf>), CliError> {
    let common = match &command {
        Command::Eigs(c) | Command::Check(c) | Command::Solve2(c) | Command::Solve3(c) => c,
        Command::Symmetrise { common, .. }
        | Command::Sweep2 { common, .. }
        | Command::Sweep3 { common, .. }
        | Command::Map2 { common, .. }
        | Command::Map3 { common, .. }
        | Command::Ep { common, .. } => common,
    };
    let mut cfg = common.load()?;
    let exec = common.execution();
    match &command {
        Command::Sweep2 { par, gamma_min, gamma_max, steps, branch, .. } => {
            let b = &mut cfg.sweep2;
            b.par = par.unwrap_or(b.par);
            b.gamma_min = gamma_min.unwrap_or(b.gamma_min);
            b.gamma_max = gamma_max.unwrap_or(b.gamma_max);
            b.steps = steps.unwrap_or(b.steps);
            b.branch = branch.unwrap_or(b.branch);
        }
        Command::Sweep3 { eps_min, eps_max, steps, negative, .. } => {
            let b = &mut cfg.sweep3;
            b.eps_min = eps_min.unwrap_or(b.eps_min);
            b.eps_max = eps_max.unwrap_or(b.eps_max);
            b.steps = steps.unwrap_or(b.steps);
            b.positive &= !negative;
        }
        Command::Map2 { gamma1, gamma2, resolution, branch, .. } => {
            let b = &mut cfg.map2;
            b.gamma1 = pair(gamma1).unwrap_or(b.gamma1);
            b.gamma2 = pair(gamma2).unwrap_or(b.gamma2);
            b.resolution = pair(resolution).unwrap_or(b.resolution);
            b.branch = branch.unwrap_or(b.branch);
        }
        Command::Map3 { fixed_axis, fixed_value, u_range, v_range, resolution, negative, .. } => {
            let b = &mut cfg.map3;
            b.fixed_axis = fixed_axis.unwrap_or(b.fixed_axis);
            b.fixed_value = fixed_value.unwrap_or(b.fixed_value);
            b.u_range = pair(u_range).unwrap_or(b.u_range);
            b.v_range = pair(v_range).unwrap_or(b.v_range);
            b.resolution = pair(resolution).unwrap_or(b.resolution);
            b.positive &= !negative;
        }
        Command::Ep { path, from, to, grid, order, negative, origin, direction, .. } => {
            let b = &mut cfg.ep;
            b.path = path.unwrap_or(b.path);
            b.interval = [from.unwrap_or(b.interval[0]), to.unwrap_or(b.interval[1])];
            b.grid = grid.unwrap_or(b.grid);
            b.order = order.or(b.order);
            b.positive &= !negative;
            b.origin = triple(origin).unwrap_or(b.origin);
            b.direction = triple(direction).unwrap_or(b.direction);
        }
        _ => {}
    }
    cfg.validate()?;
    let report = match &command {
        Command::Eigs(_) => commands::eigs(&cfg),
        Command::Check(_) => commands::check(&cfg),
        Command::Symmetrise { side, .. } => commands::symmetrise(&cfg, *side),
        Command::Solve2(_) => commands::solve2(&cfg),
        Command::Solve3(_) => commands::solve3(&cfg),
        Command::Sweep2 { .. } => commands::sweep2(&cfg, exec),
        Command::Sweep3 { .. } => commands::sweep3(&cfg, exec),
        Command::Map2 { .. } => commands::map2(&cfg, exec),
        Command::Map3 { .. } => commands::map3(&cfg, exec),
        Command::Ep { .. } => commands::ep(&cfg, exec),
    }?;
    Ok((report, common.output.clone()))
}

fn emit(body: &str, output: Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn threads_from_env() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("SYMMWELL_THREADS") else { return Ok(()) };
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => configure_threads(n).map_err(CliError::Config),
        _ => Err(CliError::Config(format!("SYMMWELL_THREADS: expected a positive integer, got {raw:?}"))),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("symmwell: {e}");
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = threads_from_env() {
        return fail(&e);
    }
    let (report, output) = match run(cli.command) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if let Err(e) = emit(&report.body, output) {
        return fail(&e);
    }
    match report.outcome {
        Some(e) => fail(&e),
        None => ExitCode::SUCCESS,
    }
}
