use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ellfit::ellipsoid::{
    check_fit, fit_identity_perturbation, fit_least_squares, fit_pseudo_calibration, FitResult, PointCloud, PSD_TOL,
};
use ellfit::experiments::{emit_csv, emit_heatmap, run_phase_grid, Construction, HeatmapOptions, PhaseGridConfig};
use ellfit::graphmatrix::{catalogue, improper_shapes, norm_check, shape_by_name, verify_decompositions};
use ellfit::hermite::product_coeffs;
use ellfit::numerics::RngStream;
use ellfit::sdpfeas::{disc_bruteforce, sample_null, sample_planted, sdp_zero_via_kernel, FeasibilityConfig};
use ellfit::Error;

const LOG2_PIXELS_PER_OCTAVE: usize = 16;

#[derive(Parser)]
#[command(name = "ellfit", version, about = "Ellipsoid fitting for random Gaussian points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hermite product tables.
    Hermite {
        #[command(subcommand)]
        cmd: HermiteCmd,
    },
    /// Graph-matrix shapes.
    Shapes {
        #[command(subcommand)]
        cmd: ShapesCmd,
    },
    /// Build one explicit construction and report its verdict as JSON.
    Fit {
        #[arg(long, value_enum)]
        construction: FitKind,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Truncation degree for `pc`.
        #[arg(long, default_value_t = 4)]
        trunc: usize,
        /// Residual tolerance override.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Exhaustive discrepancy and the SDP(A) = 0 reduction.
    Disc {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: DiscMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also run the kernel feasibility test.
        #[arg(long)]
        sdp: bool,
    },
    /// Phase-transition grid to CSV, optionally with a PPM heatmap.
    Phase {
        #[arg(long, value_enum)]
        construction: GridKind,
        #[arg(long)]
        dmax: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        heatmap: Option<PathBuf>,
        #[arg(long)]
        overlay_c: Option<f64>,
        #[arg(long)]
        log2: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, default_value_t = 5)]
        consecutive_fill: usize,
    },
}

#[derive(Subcommand)]
enum HermiteCmd {
    /// TSV of c_k in h_i h_j = Σ c_k h_k for i, j <= max.
    Products {
        #[arg(long)]
        max: usize,
    },
}

#[derive(Subcommand)]
enum ShapesCmd {
    List,
    /// Residuals of the AA*, W, B and Δ expansions on a seeded cloud.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Measured operator norm against the predicted dominant factor.
    Norm {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FitKind {
    Ls,
    Ip,
    Pc,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiscMode {
    Null,
    Planted,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridKind {
    Sdp,
    Ls,
    Ip,
}

impl From<GridKind> for Construction {
    fn from(k: GridKind) -> Self {
        match k {
            GridKind::Sdp => Construction::Sdp,
            GridKind::Ls => Construction::Ls,
            GridKind::Ip => Construction::Ip,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Csv(_) => 2,
        Error::InvalidConfig(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(Error::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cmd: Command, out: &mut impl Write) -> ellfit::Result<()> {
    match cmd {
        Command::Hermite { cmd: HermiteCmd::Products { max } } => {
            writeln!(out, "i\tj\tk\tcoeff")?;
            for i in 0..=max {
                for j in 0..=max {
                    for (k, c) in product_coeffs(i, j)?.iter() {
                        writeln!(out, "{i}\t{j}\t{k}\t{c:.15e}")?;
                    }
                }
            }
        }
        Command::Shapes { cmd } => shapes(cmd, out)?,
        Command::Fit { construction, d, n, seed, trunc, tol } => {
            let cloud = PointCloud::sample(n, d, seed)?;
            let (name, fit) = match construction {
                FitKind::Ls => ("ls", fit_least_squares(&cloud)?),
                FitKind::Ip => ("ip", fit_identity_perturbation(&cloud)?),
                FitKind::Pc => ("pc", fit_pseudo_calibration(&cloud, trunc)?),
            };
            let fit: FitResult = match tol {
                Some(t) => check_fit(fit.x, &cloud, t, PSD_TOL)?,
                None => fit,
            };
            let rec = json!({
                "construction": name,
                "d": d,
                "n": n,
                "seed": seed,
                "residual_inf": fit.residual_inf,
                "lambda_min": fit.lambda_min,
                "verdict": fit.verdict.as_str(),
            });
            writeln!(out, "{rec}")?;
        }
        Command::Disc { m, n, mode, seed, sdp } => {
            let mut rng = RngStream::new(seed, 0);
            let inst = match mode {
                DiscMode::Null => sample_null(m, n, &mut rng)?,
                DiscMode::Planted => sample_planted(m, n, &mut rng)?,
            };
            let (value, sigma) = disc_bruteforce(&inst)?;
            let verdict = if sdp {
                Some(sdp_zero_via_kernel(&inst, &FeasibilityConfig::default())?.status.as_str())
            } else {
                None
            };
            let rec = json!({ "disc_value": value, "sigma_found": sigma, "sdp_zero_verdict": verdict });
            writeln!(out, "{rec}")?;
        }
        Command::Phase { construction, dmax, nmax, trials, seed, out: csv_path, heatmap, overlay_c, log2, threads, consecutive_fill } => {
            let mut cfg = PhaseGridConfig::new(construction.into(), dmax, nmax);
            cfg.trials = trials;
            cfg.master_seed = seed;
            cfg.overlay_c = overlay_c;
            cfg.threads = threads;
            cfg.consecutive_fill = consecutive_fill;
            let results = run_phase_grid(&cfg)?;
            emit_csv(&results, &csv_path)?;
            if let Some(path) = heatmap {
                let opts = HeatmapOptions {
                    overlay_c,
                    log2_pixels_per_octave: log2.then_some(LOG2_PIXELS_PER_OCTAVE),
                };
                emit_heatmap(&results, &path, &opts)?;
            }
        }
    }
    Ok(())
}

fn shapes(cmd: ShapesCmd, out: &mut impl Write) -> ellfit::Result<()> {
    match cmd {
        ShapesCmd::List => {
            writeln!(out, "name\tcoeff\tproper\tshape")?;
            for (name, t) in catalogue() {
                writeln!(out, "{name}\t{:.12}\t{}\t{}", t.coeff, t.shape.is_proper(), t.shape)?;
            }
            for (name, s) in improper_shapes() {
                writeln!(out, "{name}\t1\t{}\t{s}", s.is_proper())?;
            }
        }
        ShapesCmd::Verify { n, d, seed } => {
            let report = verify_decompositions(&PointCloud::sample(n, d, seed)?)?;
            writeln!(out, "identity\tmax_residual")?;
            writeln!(out, "AA*\t{:e}", report.aa_star)?;
            writeln!(out, "W\t{:e}", report.w)?;
            writeln!(out, "B\t{:e}", report.b)?;
            writeln!(out, "Delta\t{:e}", report.delta)?;
        }
        ShapesCmd::Norm { shape, n, d, samples, seed } => {
            let s = shape_by_name(&shape).ok_or_else(|| Error::InvalidArgument(format!("unknown shape {shape:?}")))?;
            writeln!(out, "seed\tmeasured\tpredicted\tratio")?;
            for k in 0..samples as u64 {
                let check = norm_check(&s, &PointCloud::sample(n, d, seed + k)?)?;
                writeln!(out, "{}\t{:.6e}\t{:.6e}\t{:.6e}", seed + k, check.measured, check.predicted, check.ratio())?;
            }
        }
    }
    Ok(())
}
