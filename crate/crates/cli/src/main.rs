//! Command-line front end: grid renders of catalog maps and their
//! harmonic shears, surface meshes, slit endpoints, and the invariant
//! verification suite.
//!
//! Exit codes: 0 success, 1 invariant violation, 2 usage error,
//! 3 numerical failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use shearlab::grid::DiskGrid;
use shearlab::maps::{slit_omitted_halflines, slit_tip_approaches, ConformalMapSpec, NGonParams, SlitMapParams};
use shearlab::render::{render, OutputFormat, RenderJob};
use shearlab::shear::MonomialDilatation;
use shearlab::verify::{run_suite, Scope};
use shearlab::{Error, QuadratureConfig};

#[derive(Parser)]
#[command(name = "shearlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render the planar image of a map or of its harmonic shear
    Render(RenderArgs),
    /// Render the lifted minimal surface as an OBJ mesh
    Surface(SurfaceArgs),
    /// Run the invariant verification suite
    Verify {
        /// which invariants to run
        #[arg(long, value_enum, default_value = "all")]
        scope: ScopeArg,
        /// relative quadrature tolerance
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Print the omitted half-lines and tip approach directions of a slit map
    Endpoints(MapArgs),
}

#[derive(Copy, Clone, ValueEnum)]
enum ScopeArg {
    All,
    Slit,
    Polygon,
    Surface,
}

#[derive(Copy, Clone, ValueEnum)]
enum MapKind {
    Slit,
    Ngon,
}

#[derive(Copy, Clone, ValueEnum)]
enum FormatArg {
    Svg,
    Csv,
    Obj,
}

#[derive(Args)]
struct MapArgs {
    /// which catalog map to evaluate
    #[arg(long, value_enum)]
    map: MapKind,
    /// slit parameter A
    #[arg(long = "A", default_value_t = 1.0)]
    a_param: f64,
    /// slit parameter B
    #[arg(long = "B", default_value_t = 1.0)]
    b_param: f64,
    /// slit parameter c in [-2, 2] (mutually exclusive with --gamma)
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// slit angle gamma in (0, pi)
    #[arg(long)]
    gamma: Option<f64>,
    /// polygon vertex count (n >= 3)
    #[arg(long)]
    n: Option<u32>,
}

impl MapArgs {
    fn build(&self) -> Result<ConformalMapSpec, Error> {
        match self.map {
            MapKind::Slit => {
                let p = match (self.c, self.gamma) {
                    (Some(_), Some(_)) => {
                        return Err(Error::Param("--c and --gamma are mutually exclusive".into()))
                    }
                    (Some(c), None) => SlitMapParams::from_c(self.a_param, self.b_param, c)?,
                    (None, Some(g)) => SlitMapParams::new(self.a_param, self.b_param, g)?,
                    (None, None) => SlitMapParams::from_c(self.a_param, self.b_param, 0.0)?,
                };
                Ok(ConformalMapSpec::FourSlit(p))
            }
            MapKind::Ngon => {
                let n = self
                    .n
                    .ok_or_else(|| Error::Param("--n is required for --map ngon".into()))?;
                Ok(ConformalMapSpec::RegularNGon(NGonParams::new(n)?))
            }
        }
    }
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    map: MapArgs,
    /// dilatation omega(z) = z^m (0 renders the conformal map itself)
    #[arg(long = "omega-power", default_value_t = 0)]
    omega_power: u32,
    #[arg(long = "grid-rays", default_value_t = 16)]
    grid_rays: u32,
    #[arg(long = "grid-circles", default_value_t = 12)]
    grid_circles: u32,
    #[arg(long = "r-max", default_value_t = 0.98)]
    r_max: f64,
    #[arg(long = "samples", default_value_t = 256)]
    samples: u32,
    /// output format
    #[arg(long, value_enum, default_value = "svg")]
    format: FormatArg,
    /// output path
    #[arg(long)]
    out: PathBuf,
    /// relative quadrature tolerance
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct SurfaceArgs {
    #[command(flatten)]
    map: MapArgs,
    /// dilatation omega(z) = z^m; must be even (liftable)
    #[arg(long = "omega-power")]
    omega_power: u32,
    #[arg(long = "grid-rays", default_value_t = 48)]
    grid_rays: u32,
    #[arg(long = "grid-circles", default_value_t = 24)]
    grid_circles: u32,
    #[arg(long = "r-max", default_value_t = 0.95)]
    r_max: f64,
    /// output path (OBJ)
    #[arg(long)]
    out: PathBuf,
    /// relative quadrature tolerance
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

fn quad_cfg(tol: f64) -> QuadratureConfig {
    QuadratureConfig {
        rel_tol: tol,
        abs_tol: tol * 1e-2,
        ..Default::default()
    }
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Render(args) => {
            let job = RenderJob {
                map: args.map.build()?,
                dilatation: MonomialDilatation::new(args.omega_power),
                grid: DiskGrid {
                    n_rays: args.grid_rays,
                    n_circles: args.grid_circles,
                    r_max: args.r_max,
                    samples_per_curve: args.samples,
                },
                format: match args.format {
                    FormatArg::Svg => OutputFormat::Svg,
                    FormatArg::Csv => OutputFormat::Csv,
                    FormatArg::Obj => {
                        return Err(Error::Param(
                            "use the `surface` subcommand for OBJ output".into(),
                        ))
                    }
                },
                quadrature: quad_cfg(args.tol),
            };
            std::fs::write(&args.out, render(&job)?)?;
            eprintln!("wrote {}", args.out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Surface(args) => {
            let job = RenderJob {
                map: args.map.build()?,
                dilatation: MonomialDilatation::new(args.omega_power),
                grid: DiskGrid {
                    n_rays: args.grid_rays,
                    n_circles: args.grid_circles,
                    r_max: args.r_max,
                    samples_per_curve: 16,
                },
                format: OutputFormat::Obj,
                quadrature: quad_cfg(args.tol),
            };
            std::fs::write(&args.out, render(&job)?)?;
            eprintln!("wrote {}", args.out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { scope, tol } => {
            let scope = match scope {
                ScopeArg::All => Scope::All,
                ScopeArg::Slit => Scope::Slit,
                ScopeArg::Polygon => Scope::Polygon,
                ScopeArg::Surface => Scope::Surface,
            };
            let lines = run_suite(scope, &quad_cfg(tol))?;
            let mut all_ok = true;
            for l in &lines {
                let status = if l.passed() { "PASS" } else { "FAIL" };
                let rel = if l.upper_bound { "<" } else { ">" };
                println!(
                    "[{status}] {:<48} {:>12.3e} ({rel} {:.1e})",
                    l.name, l.residual, l.threshold
                );
                all_ok &= l.passed();
            }
            if all_ok {
                println!("all {} invariants passed", lines.len());
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Endpoints(args) => {
            let ConformalMapSpec::FourSlit(p) = args.build()? else {
                return Err(Error::Param("endpoints applies to --map slit".into()));
            };
            for hl in slit_omitted_halflines(&p)? {
                let dir = if hl.toward_plus_infinity {
                    "+infinity"
                } else {
                    "-infinity"
                };
                println!(
                    "half-line: anchor ({:+.12}, {:+.12}) toward {dir}",
                    hl.anchor.re, hl.anchor.im
                );
            }
            for (zstar, tip) in slit_tip_approaches(&p)? {
                println!(
                    "tip ({:+.12}, {:+.12}) approached along theta = {:+.12}",
                    tip.re,
                    tip.im,
                    zstar.arg()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Param(_) | Error::Unsupported(_) | Error::Parity(_) | Error::Io(_) => 2,
                Error::NonConvergence { .. }
                | Error::NonFinite { .. }
                | Error::SeriesNonConvergence(_)
                | Error::Overflow(_) => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
