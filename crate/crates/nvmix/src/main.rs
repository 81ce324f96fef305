//! Command-line driver: sweep maps, resonance tables, and level curves.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nvmix::config::SweepConfig;
use nvmix::emit;
use nvmix::error::{AppError, AppResult};
use nvmix::render;
use nvmix::sweep::{self, SweepGrid};
use nvmix_core::lindblad::{steady_state_polarization, Dissipation, SteadyStateOptions};
use nvmix_core::rwa::{dominant_term, polarization_coefficient, sideband_expansion};
use nvmix_core::spin::{eigen_levels, PhysicalConstants};

#[derive(Parser)]
#[command(
    name = "nvmix",
    version,
    about = "Frequency-mixing spin-resonance maps for spin-1 defects near their level anti-crossing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a 2-D polarization-coefficient map from a config file.
    Map {
        /// TOML configuration path.
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long = "out-csv")]
        out_csv: PathBuf,
        /// Optional output PNG path.
        #[arg(long = "out-png")]
        out_png: Option<PathBuf>,
        /// Verify a sample of cells against the time-domain solver.
        #[arg(long)]
        oracle: bool,
        /// How many cells the oracle samples.
        #[arg(long = "oracle-samples", default_value_t = 25)]
        oracle_samples: usize,
        /// Give up on an oracle cell after this many drive periods.
        #[arg(long = "oracle-max-periods", default_value_t = 20_000)]
        oracle_max_periods: usize,
        /// Override the sideband cutoff from the config.
        #[arg(long = "l-max")]
        l_max: Option<u32>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Solve the resonance conditions of a config and print the line table.
    Resonances {
        /// TOML configuration path.
        #[arg(long)]
        config: PathBuf,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print exact level curves versus field along a tilted axis.
    Levels {
        /// Lower field edge (T).
        #[arg(long)]
        bmin: f64,
        /// Upper field edge (T).
        #[arg(long)]
        bmax: f64,
        /// Number of field samples.
        #[arg(long)]
        points: usize,
        /// Misalignment angle in degrees.
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// Strain splitting in MHz (ordinary frequency).
        #[arg(long, default_value_t = 0.0)]
        strain: f64,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("nvmix: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> AppResult<()> {
    match cli.command {
        Command::Map {
            config,
            out_csv,
            out_png,
            oracle,
            oracle_samples,
            oracle_max_periods,
            l_max,
            threads,
        } => {
            let mut cfg = SweepConfig::from_path(&config)?;
            if let Some(l) = l_max {
                cfg.l_max = l;
            }
            let grid = with_threads(threads, || sweep::run_map(&cfg))?;
            let mut grid: SweepGrid = grid;
            if cfg.resonances.is_some() {
                let lines = sweep::compute_resonances(&cfg)?;
                sweep::overlay_resonances(&mut grid, &cfg, &lines)?;
            }
            emit::write_csv(&cfg, &grid, &out_csv)?;
            eprintln!(
                "map: {}x{} cells, max P = {:.6}, wrote {}",
                cfg.x.points,
                cfg.y.points,
                grid.max_p(),
                out_csv.display()
            );
            if let Some(png) = out_png {
                render::write_png(&cfg, &grid, &png)?;
                eprintln!("map: wrote {}", png.display());
            }
            if oracle {
                run_oracle(&cfg, &grid, oracle_samples, oracle_max_periods)?;
            }
            Ok(())
        }
        Command::Resonances { config, out } => {
            let cfg = SweepConfig::from_path(&config)?;
            let lines = sweep::compute_resonances(&cfg)?;
            let mut text = String::from("kind,order,b_field_T,residual_rad_s\n");
            for line in &lines {
                text.push_str(&format!(
                    "{},{},{:.9e},{:.3e}\n",
                    line.kind.name(),
                    line.order,
                    line.b_field,
                    line.residual
                ));
            }
            write_out(out, &text)
        }
        Command::Levels { bmin, bmax, points, alpha, strain, out } => {
            if points < 2 || !(bmax > bmin) {
                return Err(AppError::Config("need points >= 2 and bmax > bmin".into()));
            }
            let constants = match strain {
                0.0 => PhysicalConstants::nv(),
                s => PhysicalConstants::nv_with_strain(std::f64::consts::TAU * s * 1e6)
                    .map_err(|e| AppError::Config(e.to_string()))?,
            };
            let alpha_rad = alpha.to_radians();
            let direction = [alpha_rad.sin(), 0.0, alpha_rad.cos()];
            let b_values: Vec<f64> = (0..points)
                .map(|k| bmin + (bmax - bmin) * k as f64 / (points - 1) as f64)
                .collect();
            let levels = eigen_levels(&b_values, direction, &constants)?;
            let mut text = String::from("b_field_T,e1_Hz,e2_Hz,e3_Hz\n");
            for (b, ev) in &levels {
                let tau = std::f64::consts::TAU;
                text.push_str(&format!(
                    "{:.9e},{:.9e},{:.9e},{:.9e}\n",
                    b,
                    ev[0] / tau,
                    ev[1] / tau,
                    ev[2] / tau
                ));
            }
            write_out(out, &text)
        }
    }
}

fn with_threads<T>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    match threads {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
    }
}

fn write_out(path: Option<PathBuf>, text: &str) -> AppResult<()> {
    match path {
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| AppError::Io(format!("stdout: {e}")))
        }
        Some(p) => std::fs::write(&p, text).map_err(|e| AppError::io(&p, e)),
    }
}

/// Re-derive a sample of cells through the time-domain solver and report the
/// deviation from the map values.
fn run_oracle(
    cfg: &SweepConfig,
    grid: &SweepGrid,
    samples: usize,
    max_periods: usize,
) -> AppResult<()> {
    let n_cells = grid.cells.len();
    let take = samples.max(1).min(n_cells);
    let dissipation = Dissipation::new(cfg.rates, cfg.equilibrium, cfg.gamma2_convention)
        .map_err(AppError::from)?;
    let opts = SteadyStateOptions { max_periods, ..Default::default() };
    let mut max_abs: f64 = 0.0;
    let mut max_rel: f64 = 0.0;
    let mut skipped = 0usize;
    println!("ix,iy,P_map,P_time_domain,abs_dev");
    for k in 0..take {
        let idx = if take == 1 { 0 } else { k * (n_cells - 1) / (take - 1) };
        let ix = idx % grid.x_values.len();
        let iy = idx / grid.x_values.len();
        let cell = grid.cell(ix, iy);
        if cell.flagged {
            skipped += 1;
            continue;
        }
        let xv = grid.x_values[ix];
        let yv = grid.y_values[iy];
        let b = cfg.field_at(xv, yv).unwrap();
        let field = cfg.geometry.static_field(b).map_err(AppError::from)?;
        let frame =
            nvmix_core::frame::static_frame(&field, cfg.geometry.constants()).map_err(AppError::from)?;
        let decomps = sweep::cell_decompositions(cfg, &frame, xv, yv)?;
        let Some(decomp) = decomps.into_iter().find(|d| d.pair() == cell.pair) else {
            skipped += 1;
            continue;
        };
        // recompute the map-side value for this pair to compare like with like
        let expansion = sideband_expansion(&decomp, cfg.l_max);
        let Some((term, _)) = dominant_term(&expansion.terms, &cfg.rates) else {
            skipped += 1;
            continue;
        };
        let p_map = polarization_coefficient(term.amplitude, term.detuning, &cfg.rates);
        match steady_state_polarization(&decomp, &dissipation, &opts) {
            Ok(out) => {
                let abs = (p_map - out.coefficient).abs();
                max_abs = max_abs.max(abs);
                max_rel = max_rel.max(abs / out.coefficient.abs().max(1e-2));
                println!("{ix},{iy},{p_map:.6},{:.6},{abs:.6}", out.coefficient);
            }
            Err(e) => {
                skipped += 1;
                eprintln!("oracle: cell ({ix},{iy}) skipped: {e}");
            }
        }
    }
    println!("# oracle summary: max_abs_dev = {max_abs:.6}, max_rel_dev = {max_rel:.6}, skipped = {skipped}");
    Ok(())
}
