mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{GenKind, Outcome};

#[derive(Parser)]
#[command(name = "nabla", version, about = "Check and transform finite ∇-algebras, frames and their morphisms")]
struct Cli {
    /// Print a one-line summary on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate any document; exit 1 with a report when it is invalid.
    Validate { file: String },
    /// Property flags of an algebra, frame, lattice or strong candidate.
    Classify { file: String },
    /// All modal filters of a normal algebra.
    ModalFilters { file: String },
    /// All congruences, with the modal filter of each.
    Congruences { file: String },
    /// Subdirect irreducibility verdict and witness.
    Si { file: String },
    /// Simplicity verdict.
    Simple { file: String },
    /// Dedekind-MacNeille completion with its canonical embedding.
    DmComplete { file: String },
    /// Prime filter frame of a distributive algebra.
    PrimeFrame { file: String },
    /// Upset algebra of a frame.
    UpsetAlgebra { file: String },
    /// Check a morphism between algebras or between frames.
    CheckMorphism { file: String },
    /// Complete a span of embeddings to a commuting square.
    Amalgamate { file: String },
    /// Generate a standard algebra.
    Gen {
        #[command(subcommand)]
        which: Gen,
    },
    /// Every algebra on lattices up to the given size.
    Enumerate {
        #[arg(long)]
        max_n: usize,
        /// Comma-separated flags every emitted algebra must have, e.g. `N,D`.
        #[arg(long)]
        flags: Option<String>,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Opens of X_n with the shift preimage.
    Xn { n: usize },
    /// `∇ = 0`, `→ = 1` on a lattice (`chain:N`, `boolean:K`, `pentagon`, `diamond` or a file).
    Trivial { lattice: String },
    /// `∇ = id` with the Heyting implication.
    Heyting { lattice: String },
    /// An implication on the 3-chain that no ∇ induces.
    Cex3,
}

fn run(command: &Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Validate { file } => commands::validate(file),
        Command::Classify { file } => commands::classify_cmd(file),
        Command::ModalFilters { file } => commands::modal_filters(file),
        Command::Congruences { file } => commands::congruences(file),
        Command::Si { file } => commands::si(file),
        Command::Simple { file } => commands::simple(file),
        Command::DmComplete { file } => commands::dm_complete_cmd(file),
        Command::PrimeFrame { file } => commands::prime_frame_cmd(file),
        Command::UpsetAlgebra { file } => commands::upset_algebra_cmd(file),
        Command::CheckMorphism { file } => commands::check_morphism(file),
        Command::Amalgamate { file } => commands::amalgamate(file),
        Command::Gen { which } => commands::generate(&match which {
            Gen::Xn { n } => GenKind::Xn(*n),
            Gen::Trivial { lattice } => GenKind::Trivial(lattice.clone()),
            Gen::Heyting { lattice } => GenKind::Heyting(lattice.clone()),
            Gen::Cex3 => GenKind::Cex3,
        }),
        Command::Enumerate { max_n, flags } => commands::enumerate(*max_n, flags.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Json = cli.format;
    match run(&cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", out.value);
            if cli.verbose {
                eprintln!("{}", out.summary);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::json!({ "error": format!("{e:#}") }));
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
