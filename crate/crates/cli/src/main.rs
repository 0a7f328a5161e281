use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ncspace_core::tangent::NcHeightMode;
use ncspace_core::Error;

mod commands;
mod report;

use commands::{Outcome, UnknownModule};

#[derive(Parser)]
#[command(name = "ncspace", version, about = "Local and arithmetic invariants of algebras finite over their centre")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a source and check every module against the relations.
    Validate { source: PathBuf },
    /// Hom, derivation and Ext¹ dimensions for an ordered pair of modules.
    Ext { source: PathBuf, m: String, n: String },
    /// Tangent graph, hull skeleton and non-commutative height of a family.
    Graph {
        source: PathBuf,
        #[arg(required = true)]
        modules: Vec<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value = "single")]
        height: NcHeightMode,
    },
    /// Height functions.
    Height {
        #[command(subcommand)]
        kind: HeightKind,
    },
    /// Group a family into fibres over the centre.
    Classify {
        source: PathBuf,
        #[arg(required = true)]
        modules: Vec<String>,
        /// Central elements to compare (default: all declared).
        #[arg(long, value_delimiter = ',')]
        central: Option<Vec<String>>,
    },
    /// Intersection number of two central divisors.
    Intersect {
        source: PathBuf,
        /// `label=g1,g2,...`; give exactly two.
        #[arg(long = "divisor", required = true)]
        divisors: Vec<String>,
        /// Defining relations of the centre.
        #[arg(long = "relation")]
        relations: Vec<String>,
        /// Central variables (default: the source's named central elements).
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long)]
        rank: usize,
    },
}

#[derive(Subcommand)]
enum HeightKind {
    /// Relative, absolute and logarithmic Weil height of one point.
    Weil {
        #[arg(long)]
        field: String,
        /// Comma-separated coordinates; `t` names the field generator.
        #[arg(long)]
        coords: String,
    },
    /// Absolute heights of several central points.
    Central {
        #[arg(long)]
        field: String,
        #[arg(long = "point", required = true)]
        points: Vec<String>,
    },
    /// Representation height of one module.
    Rep {
        source: PathBuf,
        module: String,
        #[arg(long)]
        archimedean: bool,
    },
    /// Central, representation and non-commutative heights together.
    Total {
        source: PathBuf,
        #[arg(required = true)]
        modules: Vec<String>,
        #[arg(long = "point", required = true)]
        points: Vec<String>,
        #[arg(long, default_value = "single")]
        height: NcHeightMode,
        #[arg(long)]
        archimedean: bool,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Validate { source } => commands::validate_cmd(source),
        Command::Ext { source, m, n } => commands::ext_cmd(source, m, n),
        Command::Graph { source, modules, dot, height } => {
            commands::graph_cmd(source, modules, dot.as_deref(), *height)
        }
        Command::Height { kind } => match kind {
            HeightKind::Weil { field, coords } => commands::height_weil_cmd(field, coords),
            HeightKind::Central { field, points } => commands::height_central_cmd(field, points),
            HeightKind::Rep { source, module, archimedean } => commands::height_rep_cmd(source, module, *archimedean),
            HeightKind::Total { source, modules, points, height, archimedean } => {
                commands::height_total_cmd(source, modules, points, *height, *archimedean)
            }
        },
        Command::Classify { source, modules, central } => commands::classify_cmd(source, modules, central.as_deref()),
        Command::Intersect { source, divisors, relations, vars, rank } => {
            commands::intersect_cmd(source, vars.as_deref(), relations, divisors, *rank)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UnknownModule>().is_some() {
        return 4;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Syntax { .. } | Error::InvalidField(_) | Error::ConstantUnresolvable(_) | Error::UnknownGenerator(_)) => 2,
        Some(
            Error::RelationViolated { .. } | Error::NotCentral(_) | Error::UnboundGenerator(_) | Error::InvalidAction(_),
        ) => 3,
        Some(Error::DegenerateInput(_)) => 5,
        Some(Error::NotZeroDimensional) => 6,
        _ => 1,
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("NCSPACE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli) {
        Ok(outcome) => {
            let text = outcome.report.render();
            let written = match &cli.out {
                Some(p) => std::fs::write(p, text),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
