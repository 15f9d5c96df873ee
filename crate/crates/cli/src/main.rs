//! `gsdrum`: build, check and compare Gassmann–Sunada triples, drum
//! geometries and planar Dirichlet spectra.
//!
//! Exit status: 0 on success, 2 when the mathematics says no (the report
//! still goes to standard output, with the witness), 1 on usage or input errors.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use gsdrum::exactla::DEFAULT_SEED;
use report::{render_human, Report, Session};

#[derive(Debug, Parser)]
#[command(name = "gsdrum", version, about = "Gassmann–Sunada triples, drum geometries and isospectral drums")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Include wall-clock timings (seconds) in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Checks EC, AC, FF, MAX, PAIR and conjugacy of a triple.
    Check {
        #[arg(long)]
        triple: PathBuf,
    },
    /// Builds or loads an incidence geometry and verifies D and SD.
    Geometry(GeometryArgs),
    /// Writes an example triple or domain.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Builds the wreath-product triple of a triple with a transitive top group.
    Wreath {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        copies: usize,
        #[arg(long, value_enum, default_value_t = TopGroup::Symmetric)]
        top: TopGroup,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Searches for an invertible intertwiner of the two coset representations.
    Intertwine {
        #[arg(long)]
        triple: PathBuf,
    },
    /// Smallest Dirichlet eigenvalues of a tile domain.
    Spectrum {
        #[arg(long)]
        domain: PathBuf,
        /// Grid step, e.g. `1/32`.
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compares the spectra of two domains at steps `h` and `2h`.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: usize,
        /// Largest accepted relative eigenvalue difference at step `h`.
        #[arg(long, default_value_t = 0.02)]
        tolerance: f64,
    },
    /// Compares the growth of the counting function of a spectrum with `area/(4π)`.
    Weyl {
        #[arg(long)]
        spectrum: PathBuf,
        /// Domain area, e.g. `7/2`.
        #[arg(long)]
        area: String,
        /// Largest accepted `|ratio − 1|`.
        #[arg(long, default_value_t = 0.10)]
        tolerance: f64,
    },
    /// Triple → geometry → SD/D → triple, with an isomorphism check.
    Roundtrip {
        #[arg(long)]
        triple: PathBuf,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["triple", "geometry"])))]
pub struct GeometryArgs {
    /// Build the coset geometry of this triple.
    #[arg(long)]
    triple: Option<PathBuf>,
    /// Load this geometry file and use its full automorphism group.
    #[arg(long)]
    geometry: Option<PathBuf>,
    /// Write the incidence graph in DOT format.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Write the geometry file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// `PGL(n, p)` on the points and hyperplanes of `PG(n−1, p)`.
    Pg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// The symmetric design of a quadratic form on `F₂^{2m}`.
    Design {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        form: Form,
        /// Use the translations extended by the isometries of the form.
        #[arg(long)]
        orthogonal: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// The regular `n`-gon with its dihedral group.
    Dihedral {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// One of the bundled seven-tile domains.
    Gww {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TopGroup {
    Symmetric,
    Cyclic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Form {
    Hyperbolic,
    Elliptic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Which {
    A,
    B,
}

/// What a command found: its results and whether the mathematics said yes.
pub struct Outcome {
    pub results: serde_json::Value,
    pub holds: bool,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Geometry(_) => "geometry",
        Command::Gen(GenCommand::Pg { .. }) => "gen pg",
        Command::Gen(GenCommand::Design { .. }) => "gen design",
        Command::Gen(GenCommand::Dihedral { .. }) => "gen dihedral",
        Command::Gen(GenCommand::Gww { .. }) => "gen gww",
        Command::Wreath { .. } => "wreath",
        Command::Intertwine { .. } => "intertwine",
        Command::Spectrum { .. } => "spectrum",
        Command::Compare { .. } => "compare",
        Command::Weyl { .. } => "weyl",
        Command::Roundtrip { .. } => "roundtrip",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let mut session = Session::new();
    let outcome = match commands::run(&cli.command, cli.seed, &mut session) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let report = Report {
        command: command_name(&cli.command).to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cli.seed,
        inputs: session.inputs.clone(),
        results: outcome.results,
        timings: cli.timings.then(|| session.timings()),
    };
    let text = if cli.json {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    } else {
        render_human(&report)
    };
    if std::io::stdout().write_all(text.as_bytes()).is_err() {
        return ExitCode::from(1);
    }
    if outcome.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
