use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qlogic_core::cli::{self, Level, EXIT_INPUT, EXIT_OK};
use qlogic_core::hull::DEFAULT_MAX_SIZE;
use qlogic_core::quantaloid::{DEFAULT_QUANTALE_BOUND, DEFAULT_SEARCH_BOUND};
use qlogic_core::report::Report;
use qlogic_core::{dot, Error, LatticeDocument};

/// Checks and dynamics on finite property lattices.
#[derive(Parser)]
#[command(name = "qlogic", version)]
struct Cli {
    /// Largest lattice for which distributive hulls are enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIZE)]
    max_size: usize,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a lattice file and confirm it is a lattice.
    Validate { file: PathBuf },
    /// Structure flags: orthomodular, atomistic, covering, frame, ...
    Report { file: PathBuf },
    /// Enumerate the distributive hull and check its structure.
    Hull {
        file: PathBuf,
        #[arg(long)]
        list_ideals: bool,
    },
    /// Outcomes of the measurement with eigenproperty B.
    Dynamics {
        file: PathBuf,
        #[arg(long)]
        b: String,
        /// Comma-separated states or properties to propagate.
        #[arg(long)]
        input: Option<String>,
    },
    /// Verify the commuting squares, for one eigenproperty or all of them.
    Diagrams {
        file: PathBuf,
        #[arg(long)]
        b: Option<String>,
    },
    /// Close measurement maps into a quantale and check its laws.
    Quantale {
        file: PathBuf,
        /// Comma-separated: `id` or eigenproperty labels.
        #[arg(long)]
        generators: String,
        #[arg(long, default_value = "states")]
        level: Level,
        #[arg(long, default_value_t = DEFAULT_QUANTALE_BOUND)]
        bound: usize,
    },
    /// Functor laws and the triangle G∘F = H.
    Triangle { file: PathBuf },
    /// Look for distinct morphisms collapsed by G.
    SearchNonfaithful {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: usize,
    },
    /// Generate a catalog lattice, e.g. `catalog mo 2` or `catalog o6`.
    Catalog {
        name: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hasse diagram in Graphviz DOT.
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Output {
    Report(Report),
    Text(String, Option<PathBuf>),
}

fn run(cli: Cli) -> Result<Output, Error> {
    let max = cli.max_size;
    Ok(match cli.command {
        Command::Validate { file } => Output::Report(cli::validate(&cli::load(file)?)),
        Command::Report { file } => Output::Report(cli::report(&cli::load(file)?)),
        Command::Hull { file, list_ideals } => Output::Report(cli::hull(&cli::load(file)?, max, list_ideals)?),
        Command::Dynamics { file, b, input } => {
            Output::Report(cli::dynamics(&cli::load(file)?, &b, input.as_deref(), max)?)
        }
        Command::Diagrams { file, b } => Output::Report(cli::diagrams(&cli::load(file)?, b.as_deref(), max)?),
        Command::Quantale {
            file,
            generators,
            level,
            bound,
        } => Output::Report(cli::quantale(&cli::load(file)?, &generators, level, bound, max)?),
        Command::Triangle { file } => Output::Report(cli::triangle(&cli::load(file)?, max)?),
        Command::SearchNonfaithful { file, bound } => {
            Output::Report(cli::search_nonfaithful(&cli::load(file)?, bound, max)?)
        }
        Command::Catalog { name, params, output } => {
            let l = cli::generate(&name, &params)?;
            Output::Text(LatticeDocument::from_lattice(&l).to_json(), output)
        }
        Command::Dot { file, output } => Output::Text(dot::render(&cli::load(file)?), output),
    })
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let code = match run(cli) {
        Ok(Output::Report(r)) => {
            print!("{}", if json { r.to_json() } else { r.to_text() });
            r.exit_code()
        }
        Ok(Output::Text(text, None)) => {
            print!("{text}");
            EXIT_OK
        }
        Ok(Output::Text(text, Some(path))) => match write(&path, &text) {
            Ok(()) => EXIT_OK,
            Err(msg) => {
                eprintln!("error: {msg}");
                EXIT_INPUT
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
