//! Command-line front-end: matrix file I/O and one subcommand per library
//! operation, plus gamma-sweep CSV emission and a seeded instance
//! generator.
//!
//! Exit codes: 0 on success, 1 on a domain error (the error name goes to
//! the diagnostic stream), 2 on a usage error.

mod manifest;
mod textmat;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rescomp_core::{
    ah_interpolation, composite, distance, operator_norm, parallel_composition, random_spd,
    resolvent_average, resolvent_cocomposition, resolvent_composition, resolvent_comixture,
    resolvent_mixture, solve_geo, solve_mixture_geo, solve_mixture_power, solve_power,
    weighted_geometric_mean, Error, SolveTrace, SolverConfig, StartPoint, SymMatrix,
};
use textmat::{format_float, matrix_to_text, read_map, read_matrix, read_spd, write_output};

#[derive(Debug)]
pub enum CliError {
    Io { path: String, err: std::io::Error },
    Parse { path: String, line: usize, what: String },
    Domain(Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, err } => write!(f, "IoError: {path}: {err}"),
            CliError::Parse { path, line, what } => {
                write!(f, "ParseError: {path}:{line}: {what}")
            }
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

#[derive(Parser)]
#[command(
    name = "rescomp",
    version,
    about = "Resolvent compositions, Thompson distances, geometric means, and fixed-point solvers over matrix text files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resolvent composition of B by L at parameter gamma
    Compose {
        l: PathBuf,
        b: PathBuf,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Resolvent cocomposition of B by L at parameter gamma
    Cocompose {
        l: PathBuf,
        b: PathBuf,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parallel composition of B by the adjoint of L
    Parallel {
        l: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Composite L' B L
    Composite {
        l: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Resolvent average over an `alpha B-path` manifest
    Average {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Resolvent mixture over an `alpha L-path B-path` manifest
    /// (--co switches to the comixture)
    Mixture {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        co: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Thompson distance between two SPD matrices
    Distance { a: PathBuf, b: PathBuf },
    /// Weighted geometric mean A #_t B
    Gmean {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geometric interpolation between the parallel composition and the
    /// composite (gamma may be negative; L must be an isometry)
    Interpolate {
        l: PathBuf,
        b: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Picard solve of a fixed-point equation
    Solve {
        #[arg(long, value_enum)]
        equation: Equation,
        /// Map operand (geo and power equations)
        l: Option<PathBuf>,
        /// Matrix operand (geo and power equations)
        b: Option<PathBuf>,
        /// Term manifest (mixture equations)
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        gamma: f64,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 500)]
        max_iter: usize,
        #[arg(long, value_enum)]
        init: Option<InitArg>,
        /// Where to write the solution matrix
        #[arg(long)]
        solution: Option<PathBuf>,
        /// Where to write the iter,distance,rate trace
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Gamma sweep: CSV of distances to the limit with the closed-form bound
    Sweep {
        l: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        mode: SweepMode,
        /// Log-spaced grid `lo:hi:points`
        #[arg(long)]
        grid: String,
        #[arg(long)]
        out: PathBuf,
        /// Which limit the interpolation sweep approaches
        #[arg(long, value_enum, default_value_t = Toward::Composite)]
        toward: Toward,
    },
    /// Seeded random SPD instance
    Gen {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        cond: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Equation {
    Geo,
    Power,
    MixtureGeo,
    MixturePower,
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Identity,
    Operand,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepMode {
    Cocomposition,
    Composition,
    Interpolation,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Toward {
    Composite,
    Parallel,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Compose { l, b, gamma, out } => {
            let (l, b) = (read_map(&l)?, read_spd(&b)?);
            let r = resolvent_composition(&l, &b, gamma)?;
            write_output(&matrix_to_text(r.as_matrix()), out.as_deref())
        }
        Command::Cocompose { l, b, gamma, out } => {
            let (l, b) = (read_map(&l)?, read_spd(&b)?);
            let r = resolvent_cocomposition(&l, &b, gamma)?;
            write_output(&matrix_to_text(r.as_matrix()), out.as_deref())
        }
        Command::Parallel { l, b, out } => {
            let (l, b) = (read_map(&l)?, read_spd(&b)?);
            let r = parallel_composition(&l, &b)?;
            write_output(&matrix_to_text(r.as_matrix()), out.as_deref())
        }
        Command::Composite { l, b, out } => {
            let (l, b) = (read_map(&l)?, read_spd(&b)?);
            let r = composite(&l, &b)?;
            write_output(&matrix_to_text(r.as_matrix()), out.as_deref())
        }
        Command::Average {
            manifest,
            gamma,
            out,
        } => {
            let (operands, weights) = manifest::read_average(&manifest)?;
            let r = resolvent_average(&operands, &weights, gamma)?;
            write_output(&matrix_to_text(r.as_matrix()), out.as_deref())
        }
        Command::Mixture {
            manifest,
            gamma,
            co,
            out,
        } => {
            let spec = manifest::read_mixture(&manifest)?;
            let text = if co {
                matrix_to_text(resolvent_comixture(&spec, gamma)?.as_matrix())
            } else {
                matrix_to_text(resolvent_mixture(&spec, gamma)?.as_matrix())
            };
            write_output(&text, out.as_deref())
        }
        Command::Distance { a, b } => {
            let d = distance(&read_spd(&a)?, &read_spd(&b)?)?;
            println!("{}", format_float(d));
            Ok(())
        }
        Command::Gmean { a, b, t, out } => {
            let r = weighted_geometric_mean(&read_spd(&a)?, &read_spd(&b)?, t)?;
            write_output(&matrix_to_text(r.as_matrix()), out.as_deref())
        }
        Command::Interpolate { l, b, gamma, out } => {
            let r = ah_interpolation(&read_map(&l)?, &read_spd(&b)?, gamma)?;
            write_output(&matrix_to_text(r.as_matrix()), out.as_deref())
        }
        Command::Solve {
            equation,
            l,
            b,
            manifest,
            gamma,
            t,
            tol,
            max_iter,
            init,
            solution,
            trace,
        } => run_solve(
            equation, l, b, manifest, gamma, t, tol, max_iter, init, solution, trace,
        ),
        Command::Sweep {
            l,
            b,
            mode,
            grid,
            out,
            toward,
        } => run_sweep(&l, &b, mode, &grid, &out, toward),
        Command::Gen {
            dim,
            cond,
            seed,
            out,
        } => {
            let m = random_spd(dim, cond, seed)?;
            write_output(&matrix_to_text(m.as_matrix()), out.as_deref())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_solve(
    equation: Equation,
    l: Option<PathBuf>,
    b: Option<PathBuf>,
    manifest: Option<PathBuf>,
    gamma: f64,
    t: f64,
    tol: f64,
    max_iter: usize,
    init: Option<InitArg>,
    solution: Option<PathBuf>,
    trace_path: Option<PathBuf>,
) -> Result<(), CliError> {
    let cfg = SolverConfig {
        tol,
        max_iter,
        start: init.map(|i| match i {
            InitArg::Identity => StartPoint::Identity,
            InitArg::Operand => StartPoint::Operand,
        }),
    };

    let outcome = match equation {
        Equation::Geo | Equation::Power => {
            let l_path = l.ok_or_else(|| {
                CliError::Usage("the geo and power equations need an L operand path".into())
            })?;
            let b_path = b.ok_or_else(|| {
                CliError::Usage("the geo and power equations need a B operand path".into())
            })?;
            let map = read_map(&l_path)?;
            match equation {
                Equation::Geo => {
                    let operand = read_spd(&b_path)?;
                    solve_geo(&map, &operand, gamma, t, &cfg)
                }
                _ => {
                    let operand = read_matrix(&b_path)?;
                    solve_power(&map, &operand, gamma, t, &cfg)
                }
            }
        }
        Equation::MixtureGeo | Equation::MixturePower => {
            let manifest_path = manifest
                .ok_or_else(|| CliError::Usage("the mixture equations need --manifest".into()))?;
            let spec = manifest::read_mixture(&manifest_path)?;
            match equation {
                Equation::MixtureGeo => solve_mixture_geo(&spec, gamma, t, &cfg),
                _ => solve_mixture_power(&spec, gamma, t, &cfg),
            }
        }
    };

    match outcome {
        Ok((x, trace)) => {
            if let Some(path) = solution {
                write_output(&matrix_to_text(x.as_matrix()), Some(&path))?;
            }
            if let Some(path) = trace_path {
                write_output(&trace_to_csv(&trace), Some(&path))?;
            }
            println!("converged true");
            println!("iterations {}", trace.iterations);
            Ok(())
        }
        Err(Error::MaxIterExceeded(trace)) => {
            if let Some(path) = trace_path {
                write_output(&trace_to_csv(&trace), Some(&path))?;
            }
            Err(CliError::Domain(Error::MaxIterExceeded(trace)))
        }
        Err(e) => Err(CliError::Domain(e)),
    }
}

fn trace_to_csv(trace: &SolveTrace) -> String {
    let mut out = String::from("iter,distance,rate\n");
    for (k, &d) in trace.distances.iter().enumerate() {
        let rate = if k == 0 {
            String::new()
        } else {
            trace.rates[k - 1].map(format_float).unwrap_or_default()
        };
        out.push_str(&format!("{},{},{}\n", k + 1, format_float(d), rate));
    }
    out
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "grid must be lo:hi:points, got '{spec}'"
        )));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid grid endpoint '{}'", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid grid endpoint '{}'", parts[1])))?;
    let points: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid grid point count '{}'", parts[2])))?;
    if lo.is_nan() || hi.is_nan() || lo <= 0.0 || hi <= 0.0 || points == 0 {
        return Err(CliError::Usage(
            "grid endpoints must be positive and points nonzero".into(),
        ));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    let ratio = hi / lo;
    Ok((0..points)
        .map(|i| lo * ratio.powf(i as f64 / (points - 1) as f64))
        .collect())
}

fn append_row(
    rows: &mut String,
    gamma: f64,
    value: &SymMatrix,
    limit: &SymMatrix,
    bound: f64,
) -> Result<(), CliError> {
    let value_norm = operator_norm(value)?;
    let dist = operator_norm(&value.sub(limit)?)?;
    rows.push_str(&format!(
        "{},{},{},{}\n",
        format_float(gamma),
        format_float(value_norm),
        format_float(dist),
        format_float(bound)
    ));
    Ok(())
}

fn run_sweep(
    l_path: &Path,
    b_path: &Path,
    mode: SweepMode,
    grid: &str,
    out: &Path,
    toward: Toward,
) -> Result<(), CliError> {
    let grid = parse_grid(grid)?;
    let l = read_map(l_path)?;
    let b = read_spd(b_path)?;

    let mut rows = String::from("gamma,value_norm,dist_to_limit,theory_bound\n");
    match mode {
        SweepMode::Cocomposition => {
            // limit L'BL as gamma -> 0, envelope (1-theta)/theta = gamma ||B||
            let limit = composite(&l, &b)?;
            let limit_norm = operator_norm(&limit)?;
            for &gamma in &grid {
                let v = resolvent_cocomposition(&l, &b, gamma)?;
                let bound = gamma * b.lambda_max() * limit_norm;
                append_row(&mut rows, gamma, &v, &limit, bound)?;
            }
        }
        SweepMode::Composition => {
            // limit L*>B as gamma -> inf, envelope omega - 1 = ||B^-1|| / gamma
            let limit = parallel_composition(&l, &b)?;
            let limit_norm = limit.lambda_max();
            for &gamma in &grid {
                let v = resolvent_composition(&l, &b, gamma)?;
                let bound = limit_norm / (b.lambda_min() * gamma);
                append_row(&mut rows, gamma, v.base(), limit.base(), bound)?;
            }
        }
        SweepMode::Interpolation => match toward {
            Toward::Composite => {
                let limit = composite(&l, &b)?;
                let limit_norm = operator_norm(&limit)?;
                for &gamma in &grid {
                    let v = ah_interpolation(&l, &b, gamma)?;
                    let bound = b.lambda_max() / gamma * limit_norm;
                    append_row(&mut rows, gamma, v.base(), &limit, bound)?;
                }
            }
            Toward::Parallel => {
                let limit = parallel_composition(&l, &b)?;
                let limit_norm = limit.lambda_max();
                for &gamma in &grid {
                    let v = ah_interpolation(&l, &b, -gamma)?;
                    let bound = limit_norm / (b.lambda_min() * gamma);
                    append_row(&mut rows, -gamma, v.base(), limit.base(), bound)?;
                }
            }
        },
    }

    write_output(&rows, Some(out))
}
