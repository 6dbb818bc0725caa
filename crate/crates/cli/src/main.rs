//! `tropica` batch front end.
//!
//! Every subcommand prints one JSON record on stdout and can also write it
//! (`--json`) and a figure (`--svg`) to files. Exit codes: 0 success,
//! 2 parse or input error, 3 numeric failure, 4 unsupported case.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tropica::Error;

#[derive(Parser, Debug)]
#[command(name = "tropica", version, about = "Tropical curves, amoebas and patchworking", arg_required_else_help = true)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Seed for every stochastic step.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Also write the JSON record here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Write an SVG figure here.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Corner locus of a tropical polynomial such as "max(0, x, y)".
    Trop {
        /// Polynomial text, or @FILE.
        poly: String,
        /// Draw the dual subdivision as an inset.
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Count plane tropical curves through generic points with lattice paths.
    Count {
        /// Standard triangle dΔ.
        #[arg(long, conflicts_with = "polygon")]
        degree: Option<i64>,
        /// Polygon vertices "x,y;x,y;...".
        #[arg(long)]
        polygon: Option<String>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        genus: i64,
        /// Also count irreducible curves (dΔ only).
        #[arg(long)]
        irr: bool,
        /// Linear order: "a,b" for a·x + b·y, or ε for y - ε·x.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Leave the path list out of the record.
        #[arg(long)]
        no_paths: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Amoeba raster and complement components of a complex polynomial.
    Amoeba {
        poly: String,
        #[command(flatten)]
        grid: Grid,
        /// Monte Carlo area with this many samples.
        #[arg(long)]
        area: Option<usize>,
        /// Contour points via the logarithmic Gauss map.
        #[arg(long)]
        contour: bool,
        /// Ronkin function at "x,y" (repeatable).
        #[arg(long, allow_hyphen_values = true)]
        ronkin: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Spine of the amoeba from Ronkin coefficients.
    Spine {
        poly: String,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        out: Output,
    },
    /// Hausdorff distance between rescaled amoebas of Σ t^a z^j and the tropical limit.
    Dequant {
        /// Tropical polynomial giving the valuations, e.g. "max(0, x, y)".
        poly: String,
        #[arg(long, value_delimiter = ',', default_values_t = [10.0, 100.0, 1000.0])]
        t: Vec<f64>,
        #[arg(long, default_value = "5", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 0.01)]
        pitch: f64,
        #[arg(long, default_value_t = 64)]
        angles: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Real components of a patchworked curve.
    Patchwork {
        /// Tropical polynomial with a smooth corner locus.
        #[arg(required_unless_present = "curve")]
        poly: Option<String>,
        /// Lattice signs: "harnack", "random" or "i,j:+;i,j:-;..." (missing points are +).
        /// With --curve, a JSON file of sign classes per edge and leg.
        #[arg(long, default_value = "harnack")]
        signs: String,
        /// Curve JSON file, used instead of a polynomial.
        #[arg(long, conflicts_with = "poly")]
        curve: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Validate a parameterized curve and report its invariants.
    Curve {
        /// Curve JSON file.
        #[arg(required_unless_present = "supercubic")]
        file: Option<PathBuf>,
        /// Use the built-in superabundant spatial cubic.
        #[arg(long)]
        supercubic: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Grid {
    /// Half-width R for [-R,R]², or "x0,x1,y0,y1".
    #[arg(long, default_value = "6", allow_hyphen_values = true)]
    window: String,
    #[arg(long, default_value_t = 200)]
    resolution: usize,
    #[arg(long, default_value_t = 64)]
    angles: usize,
    #[arg(long, default_value_t = 1024)]
    nodes: usize,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Numeric(_) => 3,
        Error::Unsupported(_) => 4,
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn set_threads() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var("TROPICA_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_threads();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
