mod config;
mod figures;
mod grid_spec;
mod output;
mod registry;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use xi_spectral::cusp::{cusp_embedding, flux_check, flux_shifted_expansion, CuspPoint};
use xi_spectral::roots::{find_zeros, match_zeros};

use config::RunConfig;
use figures::{Figure, FigureId};
use output::{num, Table};
use registry::{Bound, Function, Params};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numeric failure{}: {source}", at.map(|x| format!(" at {x}")).unwrap_or_default())]
    Numeric { at: Option<f64>, source: xi_spectral::Error },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn numeric(at: Option<f64>, source: xi_spectral::Error) -> Self {
        CliError::Numeric { at, source }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric { .. } | CliError::Io(_) => 3,
        }
    }
}

/// Evaluates on all points in parallel; results keep grid order and the
/// reported failure is the one at the smallest index.
pub fn eval_grid(f: &Bound, xs: &[f64]) -> Result<Vec<f64>, CliError> {
    let results: Vec<_> = xs.par_iter().map(|x| f.eval(*x)).collect();
    results
        .into_iter()
        .zip(xs)
        .map(|(r, x)| r.map_err(|e| CliError::numeric(Some(*x), e)))
        .collect()
}

#[derive(Parser)]
#[command(name = "xispec", version, about = "Evaluate ξ, its spectral models and their zeros on grids")]
struct Cli {
    /// TOML configuration file; defaults to $XISPEC_CONFIG, then built-in values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one configuration entry, e.g. `--set special.rel_tol=1e-10`.
    #[arg(long = "set", global = true, value_name = "TABLE.KEY=VALUE")]
    overrides: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct FnArgs {
    /// Whittaker κ, or the Morse coupling (default 9/4).
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<f64>,
    /// Bessel or Whittaker argument (defaults 2π and 4π).
    #[arg(long)]
    z: Option<f64>,
    /// Constant term of the Morse potential (default 0).
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
}

impl From<FnArgs> for Params {
    fn from(a: FnArgs) -> Self {
        Params { kappa: a.kappa, z: a.z, gamma: a.gamma }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a function on a grid (start:stop:step or a,b,c).
    Eval {
        function: Function,
        #[arg(allow_hyphen_values = true)]
        grid: String,
        #[command(flatten)]
        args: FnArgs,
        /// Output file (standard output if absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the data for one comparison plot into a directory.
    Figure {
        id: FigureId,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Grid spacing in ω.
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
    /// Locate sign changes on lo:hi[:step], optionally paired with a second function's.
    Zeros {
        function: Function,
        #[arg(allow_hyphen_values = true)]
        range: String,
        #[arg(long)]
        against: Option<Function>,
        #[command(flatten)]
        args: FnArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Embed cusp points x + iy (y ≥ 1/2π) into R³.
    Embed {
        /// Points as x,y pairs, e.g. `0,1 0.5,2`.
        #[arg(required = true)]
        points: Vec<String>,
    },
    /// Flux through a region of given area less the Dirac strings, reduced to (−π, π].
    Fluxcheck {
        #[arg(long, default_value_t = 2.25, allow_hyphen_values = true)]
        field: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_3)]
        area: f64,
        /// Flux of each string; repeat for several.
        #[arg(long = "string", allow_hyphen_values = true)]
        strings: Vec<f64>,
    },
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn bind(f: Function, args: FnArgs, cfg: &RunConfig) -> Result<Bound, CliError> {
    // Invalid parameters, such as a Morse κ ≥ 2π, are caller mistakes.
    Bound::new(f, args.into(), cfg).map_err(|e| CliError::Usage(e.to_string()))
}

fn zeros_of(f: &Bound, lo: f64, hi: f64, cfg: &RunConfig) -> Result<Vec<f64>, CliError> {
    let start = lo.max(f.support_start());
    if start >= hi {
        return Ok(Vec::new());
    }
    let z = &cfg.zeros;
    let found = find_zeros(|x| f.eval(x), start, hi, z.step.min(hi - start), z.xtol, usize::MAX)
        .map_err(|e| CliError::numeric(None, e))?
        .zeros;
    // A jump at `start` itself also produces a spurious root.
    let jumps = f.jumps(start - z.step, hi);
    Ok(found
        .into_iter()
        .filter(|r| jumps.iter().all(|j| (j - r).abs() > 4.0 * z.xtol + 1e-12 * j.abs()))
        .collect())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::load(cli.config.as_deref(), &cli.overrides)?;
    let hash = cfg.hash();
    match cli.command {
        Command::Eval { function, grid, args, output } => {
            let g = grid_spec::parse_grid(&grid)?;
            let f = bind(function, args, &cfg)?;
            let values = eval_grid(&f, g.points())?;
            let mut t = Table::new(&[f.argument(), f.value_name()]);
            for (x, v) in g.points().iter().zip(values) {
                t.row(vec![Some(*x), Some(v)]);
            }
            let mut out = sink(output.as_deref())?;
            t.write_csv(&mut out, &hash)?;
            out.flush()?;
        }
        Command::Figure { id, out_dir, step } => {
            if !(step > 0.0 && step.is_finite()) {
                return Err(CliError::Usage("--step must be positive".into()));
            }
            let fig = figures::build(id, step, &cfg)?;
            std::fs::create_dir_all(&out_dir)?;
            let path = out_dir.join(id.file_name());
            let mut out = BufWriter::new(File::create(&path)?);
            match fig {
                Figure::Csv(t) => t.write_csv(&mut out, &hash)?,
                Figure::Mesh { points, comment } => output::write_mesh(&mut out, &points, &comment, &hash)?,
            }
            out.flush()?;
            eprintln!("wrote {}", path.display());
        }
        Command::Zeros { function, range, against, args, output } => {
            let (lo, hi, step) = grid_spec::parse_range(&range, cfg.zeros.step)?;
            // A step given in the range is part of the effective configuration.
            let mut cfg = cfg;
            cfg.zeros.step = step;
            let hash = cfg.hash();
            let f = bind(function, args, &cfg)?;
            let zs = zeros_of(&f, lo, hi, &cfg)?;
            let t = match against {
                None => {
                    let mut t = Table::new(&["zero"]);
                    t.comment(format!("zeros of {} on [{}, {}]: {}", f.value_name(), num(lo), num(hi), zs.len()));
                    for z in zs {
                        t.row(vec![Some(z)]);
                    }
                    t
                }
                Some(g) => {
                    let g = bind(g, args, &cfg)?;
                    let gz = zeros_of(&g, lo, hi, &cfg)?;
                    let m = match_zeros(&zs, &gz, cfg.zeros.match_cap);
                    let mut t = Table::new(&["reference", "candidate", "displacement"]);
                    t.comment(format!(
                        "{} zeros of {} and {} of {} on [{}, {}]",
                        zs.len(),
                        f.value_name(),
                        gz.len(),
                        g.value_name(),
                        num(lo),
                        num(hi)
                    ));
                    t.comment(format!(
                        "matched {}, unpaired {} / {}, max displacement {}",
                        m.pairs.len(),
                        m.unpaired_reference.len(),
                        m.unpaired_candidate.len(),
                        num(m.max_displacement())
                    ));
                    for (r, c) in &m.pairs {
                        t.row(vec![Some(*r), Some(*c), Some(c - r)]);
                    }
                    for r in &m.unpaired_reference {
                        t.row(vec![Some(*r), None, None]);
                    }
                    for c in &m.unpaired_candidate {
                        t.row(vec![None, Some(*c), None]);
                    }
                    t
                }
            };
            let mut out = sink(output.as_deref())?;
            t.write_csv(&mut out, &hash)?;
            out.flush()?;
        }
        Command::Embed { points } => {
            let mut t = Table::new(&["x", "y", "X", "Y", "Z"]);
            for p in &points {
                let (x, y) = p
                    .split_once(',')
                    .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                    .ok_or_else(|| CliError::Usage(format!("point `{p}` is not x,y")))?;
                let e = cusp_embedding(CuspPoint { x, y }).map_err(|e| CliError::Usage(e.to_string()))?;
                t.row(vec![Some(x), Some(y), Some(e[0]), Some(e[1]), Some(e[2])]);
            }
            let mut out = sink(None)?;
            t.write_csv(&mut out, &hash)?;
            out.flush()?;
        }
        Command::Fluxcheck { field, area, strings } => {
            let r = flux_check(field, area, &strings).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut t = Table::new(&["field", "area", "strings", "residue", "mode_shift"]);
            t.row(vec![
                Some(field),
                Some(area),
                Some(strings.iter().sum()),
                Some(r),
                Some(flux_shifted_expansion(r, 0)),
            ]);
            let mut out = sink(None)?;
            t.write_csv(&mut out, &hash)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with status 2 on its own usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("xispec: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
