//! `lieq`: run one computation on a presentation file and emit a report.

mod commands;
mod presentation;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::{Diagnostic, Envelope, Outcome, Status};

#[derive(Parser)]
#[command(name = "lieq", version, about = "Exact computations with differential graded Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, check ∂² = 0 and print the normalized presentation.
    Validate(Common),
    /// Betti numbers of H′ through the degree cutoff.
    Homology(Common),
    /// A minimal model with a verified quasi-isomorphism.
    MinimalModel(Common),
    /// Bigraded model of the relations, or of H′ when there are none.
    BigradedModel(Common),
    /// Filtered model with its perturbation components.
    FilteredModel(Common),
    /// Coformality within cutoffs and the first obstruction order.
    Coformal(Common),
    /// Minimal CW resolution through the simplicial cutoff.
    Resolution(Common),
    /// Bigraded homology H_{s,t}.
    DglHomology {
        #[command(flatten)]
        common: Common,
        /// Also compare against the coformal model.
        #[arg(long)]
        compare: bool,
    },
    /// Cohomology with coefficients in a graded vector space.
    Cohomology {
        #[command(flatten)]
        common: Common,
        /// Coefficient dimensions as `degree:dim` pairs.
        #[arg(long, default_value = "0:1")]
        coefficients: String,
    },
    /// Free Jacobi algebra of the linear part, θ comparison and the Jacobi property on homology.
    JacobiCheck {
        #[command(flatten)]
        common: Common,
        /// Level of the free Jacobi algebra (0, 1 or 2).
        #[arg(long, default_value_t = 2)]
        level: u32,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Presentation file.
    input: PathBuf,
    #[arg(long)]
    deg_cutoff: Option<u32>,
    #[arg(long)]
    filt_cutoff: Option<u32>,
    #[arg(long)]
    simp_cutoff: Option<u32>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock timing in the report (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

pub const DEFAULT_DEG: u32 = 8;
pub const DEFAULT_FILT: u32 = 4;
pub const DEFAULT_SIMP: u32 = 4;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common, extra) = match &cli.command {
        Command::Validate(c) => ("validate", c, commands::Extra::None),
        Command::Homology(c) => ("homology", c, commands::Extra::None),
        Command::MinimalModel(c) => ("minimal-model", c, commands::Extra::None),
        Command::BigradedModel(c) => ("bigraded-model", c, commands::Extra::None),
        Command::FilteredModel(c) => ("filtered-model", c, commands::Extra::None),
        Command::Coformal(c) => ("coformal", c, commands::Extra::None),
        Command::Resolution(c) => ("resolution", c, commands::Extra::None),
        Command::DglHomology { common, compare } => ("dgl-homology", common, commands::Extra::Compare(*compare)),
        Command::Cohomology { common, coefficients } => ("cohomology", common, commands::Extra::Coefficients(coefficients.clone())),
        Command::JacobiCheck { common, level } => ("jacobi-check", common, commands::Extra::Level(*level)),
    };
    let start = Instant::now();
    let path = common.input.display().to_string();
    let (input, cutoffs, outcome) = match std::fs::read(&common.input) {
        Err(e) => (
            json!({ "path": path }),
            json!(null),
            Outcome::failed(Diagnostic::new("io", format!("cannot read {path}: {e}")), Status::Diagnostic),
        ),
        Ok(bytes) => {
            let input = json!({ "path": path, "sha256": report::sha256_hex(&bytes) });
            match String::from_utf8(bytes) {
                Err(_) => (input, json!(null), Outcome::failed(Diagnostic::new("io", "input is not UTF-8"), Status::Diagnostic)),
                Ok(src) => match presentation::parse(&src) {
                    Err(e) => {
                        let d = Diagnostic::new(e.kind.as_str(), e.message.clone()).at(e.line, e.column);
                        (input, json!(null), Outcome::failed(d, Status::Diagnostic))
                    }
                    Ok(p) => {
                        let cut = commands::Cutoffs {
                            deg: common.deg_cutoff.or(p.cutoffs.deg).unwrap_or(DEFAULT_DEG),
                            filt: common.filt_cutoff.or(p.cutoffs.filt).unwrap_or(DEFAULT_FILT),
                            simp: common.simp_cutoff.or(p.cutoffs.simp).unwrap_or(DEFAULT_SIMP),
                        };
                        let cj = json!({ "deg": cut.deg, "filt": cut.filt, "simp": cut.simp });
                        (input, cj, commands::run(name, &p, cut, &extra))
                    }
                },
            }
        }
    };
    let env = Envelope {
        command: name,
        input,
        cutoffs,
        outcome,
        elapsed_ms: common.timing.then(|| start.elapsed().as_millis()),
    };
    let body = match common.format {
        Format::Json => env.render_json(),
        Format::Text => env.render_text(),
    };
    match &common.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &body) {
                eprintln!("lieq: cannot write {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{body}"),
    }
    for d in &env.outcome.diagnostics {
        match (d.line, d.column) {
            (Some(l), Some(c)) => eprintln!("lieq: {path}:{l}:{c}: {}: {}", d.kind, d.message),
            _ => eprintln!("lieq: {path}: {}: {}", d.kind, d.message),
        }
    }
    ExitCode::from(env.outcome.status.exit_code() as u8)
}
