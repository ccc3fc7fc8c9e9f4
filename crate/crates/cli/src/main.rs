use std::io::IsTerminal;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stacky_cli::commands::{self, Output};
use stacky_cli::gallery::FamilyParams;
use stacky_cli::report::Style;
use stacky_cli::sweep::{Family, ParamSpec, SweepRequest};
use stacky_cli::CliError;

/// Exact analysis of toric Deligne-Mumford stacks given by stacky fans or
/// stacky polytopes.
#[derive(Parser)]
#[command(name = "stacky", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document; prints violations as JSON and exits 2 if invalid.
    Validate { file: String },
    /// Fundamental group, isotropy, inertia, decisions, cover and volumes.
    Report {
        file: String,
        /// Emit JSON instead of the pretty report.
        #[arg(long, conflicts_with = "pretty")]
        json: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Emit the universal cover as a document.
    Cover { file: String },
    /// List the built-in examples, or print one as a document.
    Gallery {
        name: Option<String>,
        /// Comma-separated a-vector for parametrized entries.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Option<Vec<i64>>,
        /// Comma-separated labels for parametrized entries.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        m: Option<Vec<i64>>,
    },
    /// Classify a family over a parameter grid.
    Sweep {
        /// sheared-simplex or trapezoid
        family: String,
        /// Dimension of the sheared simplex.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// lo..hi (every coordinate) or a comma-separated tuple.
        #[arg(long, default_value = "1..2")]
        a: String,
        #[arg(long, default_value = "1..3")]
        m: String,
        /// Skip a-vectors whose entries have a common factor.
        #[arg(long)]
        primitive: bool,
        #[arg(long)]
        csv: bool,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Report { file, json, .. } => commands::report(&file, json, Style::from_env(std::io::stdout().is_terminal())),
        Command::Cover { file } => commands::cover(&file),
        Command::Gallery { name: None, a: None, m: None } => Ok(commands::gallery_list()),
        Command::Gallery { name: None, .. } => Err(CliError::Usage("--a/--m need a gallery entry name".into())),
        Command::Gallery { name: Some(name), a, m } => commands::gallery_entry(&name, &FamilyParams { a, m }),
        Command::Sweep { family, dim, a, m, primitive, csv } => {
            let req = SweepRequest {
                family: family.parse::<Family>()?,
                dim,
                a: a.parse::<ParamSpec>()?,
                m: m.parse::<ParamSpec>()?,
                primitive_only: primitive,
            };
            commands::sweep(&req, csv)
        }
    }
}

fn main() -> ExitCode {
    // clap would exit 2 on bad usage, which is reserved for invalid input
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            for line in &out.stderr {
                eprintln!("{line}");
            }
            print!("{}", out.stdout);
            if !out.stdout.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            if let Some(json) = commands::violations_json(&err) {
                println!("{json}");
            }
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
