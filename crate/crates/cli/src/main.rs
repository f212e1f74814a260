//! `prox`: command-line front end for the proximity toolkit.
//!
//! Exit codes: 0 when the check passes, 1 when a verification fails, 2 on
//! input errors.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use input::{parse_finite, parse_nonnegative, parse_window};

#[derive(Parser)]
#[command(name = "prox", version, about = "Verifiable computational topology on finite data")]
pub struct Cli {
    /// Print machine-readable JSON on stdout instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum CoverMode {
    #[default]
    Topological,
    Descriptive,
    Degenerate,
}

#[derive(Args)]
pub struct Descriptive {
    /// Use the descriptive relation instead of the spatial one.
    #[arg(long)]
    pub descriptive: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check the proximity axioms on a space.
    CheckAxioms {
        space: PathBuf,
        #[command(flatten)]
        mode: Descriptive,
        /// Override the metric threshold.
        #[arg(long, value_parser = parse_nonnegative)]
        tau: Option<f64>,
        /// Override the feature tolerance.
        #[arg(long, value_parser = parse_nonnegative)]
        feature_tolerance: Option<f64>,
        /// Sampled cases per axiom on spaces too large for exhaustive checks.
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
    },
    /// Closure of a set.
    Closure {
        space: PathBuf,
        /// Comma-separated point ids.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
        #[command(flatten)]
        mode: Descriptive,
    },
    /// Descriptive intersection of two or more sets.
    Dintersect {
        space: PathBuf,
        /// Comma-separated point ids; repeat for each set.
        #[arg(long = "set", required = true, num_args = 1)]
        sets: Vec<String>,
        #[arg(long, value_parser = parse_nonnegative)]
        feature_tolerance: Option<f64>,
    },
    /// Check that a map is proximally continuous.
    Continuity {
        map: PathBuf,
        #[command(flatten)]
        mode: Descriptive,
    },
    /// Glue two maps defined on closed pieces of a space.
    Glue {
        f: PathBuf,
        g: PathBuf,
        /// The space the pieces cover.
        #[arg(long)]
        space: PathBuf,
        #[command(flatten)]
        mode: Descriptive,
        /// Write the glued map here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a homotopy witness between two maps.
    Homotopy {
        f: PathBuf,
        g: PathBuf,
        witness: PathBuf,
        #[command(flatten)]
        mode: Descriptive,
    },
    /// Validate a homotopic cycle or cycle system.
    Cycles {
        shape: PathBuf,
        /// Space for shapes that do not name one.
        #[arg(long)]
        space: Option<PathBuf>,
        /// Also check the system boundary on this pixel window.
        #[arg(long, value_parser = parse_window)]
        window: Option<(usize, usize)>,
    },
    /// Build the nerve of a cover and its Betti numbers.
    Nerve {
        cover: PathBuf,
        #[command(flatten)]
        mode: Descriptive,
    },
    /// Betti numbers of a complex, or the free-group rank of a graph.
    Betti { complex: PathBuf },
    /// Check that every nonvoid intersection of a cover is contractible.
    Goodcover {
        cover: PathBuf,
        #[arg(long, value_enum, default_value_t = CoverMode::Topological)]
        mode: CoverMode,
        /// Smallest family size checked.
        #[arg(long, default_value_t = 2)]
        min_family: usize,
    },
    /// Partition a pixel window around a closed curve.
    Jordan {
        /// A polyline as JSON, or a PBM/PGM image of the curve.
        curve: PathBuf,
        #[arg(long, value_parser = parse_window, default_value = "64x64")]
        window: (usize, usize),
        #[arg(long)]
        emit_svg: Option<PathBuf>,
        /// Pixels per grid cell in the SVG.
        #[arg(long, default_value_t = 8)]
        scale: usize,
    },
    /// Comparison-angle sum of a point quadruple.
    Alexandrov {
        /// `{points: [[x, y] x 4], kappa}`; omit to use the unit-circle example.
        quadruple: Option<PathBuf>,
        #[arg(long, value_parser = parse_finite, allow_negative_numbers = true)]
        kappa: Option<f64>,
    },
    /// Track descriptor persistence across frames.
    Track {
        frames: PathBuf,
        #[arg(long, default_value_t = 0)]
        tolerance: usize,
        #[arg(long, default_value_t = 0)]
        gap: usize,
        #[arg(long, value_parser = parse_nonnegative)]
        feature_tolerance: Option<f64>,
        /// Write the JSON table here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the CSV table here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the barcode SVG here.
        #[arg(long)]
        barcode: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
