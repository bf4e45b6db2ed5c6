//! Command-line front end for `braidseed`: argument parsing, dispatch to the
//! library, and deterministic reports.
//!
//! Word letters and positions are 1-based on the command line; seed slots
//! given via `--position` are word positions as well.

mod campaign;
mod commands;
pub mod input;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::dispatch;
pub use input::CliError;
pub use report::{emit_report, parse_report, Format, Report, Section, Verdict};

pub const DEFAULT_EXACT_CAP: usize = 8;
pub const BUDGET_ENV: &str = "BRAIDSEED_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "braidseed", version, about = "Braid words, transition maps and quantum cluster seeds")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Cartan datum as JSON: {"indices":[..],"matrix":[[..]],"symmetrizer":[..]}.
    #[arg(long, global = true)]
    pub cartan: Option<PathBuf>,
    /// Builtin Cartan type, e.g. A3, B2, A1xA2. Defaults to A_n for the largest letter used.
    #[arg(long = "type", global = true)]
    pub cartan_type: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Node limit for move-graph searches.
    #[arg(long, global = true, env = BUDGET_ENV)]
    pub budget: Option<String>,
    /// Exact quantum-torus arithmetic where supported.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Longest word for which `--exact` is accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_CAP)]
    pub exact_cap: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Validate a Cartan datum.
    #[command(subcommand)]
    Cartan(CartanCmd),
    #[command(subcommand)]
    Words(WordsCmd),
    #[command(subcommand)]
    Transition(TransitionCmd),
    #[command(subcommand)]
    Seed(SeedCmd),
    #[command(subcommand)]
    Qdatum(QdatumCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Clone, Subcommand)]
pub enum CartanCmd {
    Check,
}

#[derive(Debug, Clone, Args)]
pub struct WordArg {
    /// Letters as 1-based labels, e.g. 1,2,1.
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
}

#[derive(Debug, Clone, Args)]
pub struct WordPair {
    /// Give exactly twice.
    #[arg(long, required = true, allow_hyphen_values = true)]
    pub word: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct BoxArg {
    /// `a,b` for [a,b]; `[a,b}` or --brace for the brace form.
    #[arg(long = "box")]
    pub ibox: String,
    #[arg(long)]
    pub brace: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum WordsCmd {
    /// Applicable braid moves.
    Moves(WordArg),
    /// A shortest move path between two words.
    Path(WordPair),
    /// Equality in the positive braid monoid.
    Equal(WordPair),
    /// The exponent vector of an i-box.
    Ibox {
        #[command(flatten)]
        word: WordArg,
        #[command(flatten)]
        ibox: BoxArg,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum TransitionCmd {
    /// Push a vector along moves, e.g. --move 3@1 --move 2@3.
    Apply {
        #[command(flatten)]
        word: WordArg,
        #[arg(long = "move", required = true)]
        moves: Vec<String>,
        #[arg(long)]
        vector: String,
    },
    /// Compare the transition image of an i-box with the tabulated formula.
    VerifyIbox {
        #[command(flatten)]
        word: WordArg,
        #[arg(long = "move")]
        mv: String,
        #[command(flatten)]
        ibox: BoxArg,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum SeedCmd {
    /// The seed of a word.
    Build {
        #[command(flatten)]
        word: WordArg,
        /// Also write the seed JSON to this file.
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Mutate at a word position (1-based).
    Mutate {
        /// Seed JSON as written by `seed build --write`.
        #[arg(long)]
        seed: Option<PathBuf>,
        /// Build the seed from a word instead.
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
        #[arg(long)]
        position: usize,
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Run the mutation scripts along a move path and compare with the target seed.
    VerifyEquivalence(WordPair),
    /// The T-system relation of an i-box.
    Tsystem {
        #[command(flatten)]
        word: WordArg,
        #[command(flatten)]
        ibox: BoxArg,
    },
}

#[derive(Debug, Clone, Args)]
pub struct HeightArg {
    /// Height function, one integer per vertex.
    #[arg(long, allow_hyphen_values = true)]
    pub xi: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum QdatumCmd {
    Build(HeightArg),
    AdaptedWord(HeightArg),
    Window {
        #[command(flatten)]
        xi: HeightArg,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
        k: i64,
    },
    Phi {
        #[command(flatten)]
        xi: HeightArg,
        /// Vertex (1-based) and level, e.g. 1,0.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// The pairing N on all lattice points with levels in `lo,hi`.
    Ntab {
        #[command(flatten)]
        xi: HeightArg,
        #[arg(long, allow_hyphen_values = true)]
        levels: String,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum VerifyCmd {
    /// Seeds of two words related by moves agree after the mutation scripts.
    Corollary(WordPair),
    /// T-system relations, for one box or every closed box of the word.
    Tsystem {
        #[command(flatten)]
        word: WordArg,
        #[arg(long = "box")]
        ibox: Option<String>,
        #[arg(long)]
        brace: bool,
    },
    /// Exhaustive checks over all words up to the caps.
    All {
        #[arg(long, default_value_t = 8)]
        length_cap: usize,
        #[arg(long, default_value_t = 3)]
        rank_cap: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Cartan(CartanCmd::Check) => "cartan check",
            Command::Words(c) => match c {
                WordsCmd::Moves(_) => "words moves",
                WordsCmd::Path(_) => "words path",
                WordsCmd::Equal(_) => "words equal",
                WordsCmd::Ibox { .. } => "words ibox",
            },
            Command::Transition(c) => match c {
                TransitionCmd::Apply { .. } => "transition apply",
                TransitionCmd::VerifyIbox { .. } => "transition verify-ibox",
            },
            Command::Seed(c) => match c {
                SeedCmd::Build { .. } => "seed build",
                SeedCmd::Mutate { .. } => "seed mutate",
                SeedCmd::VerifyEquivalence(_) => "seed verify-equivalence",
                SeedCmd::Tsystem { .. } => "seed tsystem",
            },
            Command::Qdatum(c) => match c {
                QdatumCmd::Build(_) => "qdatum build",
                QdatumCmd::AdaptedWord(_) => "qdatum adapted-word",
                QdatumCmd::Window { .. } => "qdatum window",
                QdatumCmd::Phi { .. } => "qdatum phi",
                QdatumCmd::Ntab { .. } => "qdatum ntab",
            },
            Command::Verify(c) => match c {
                VerifyCmd::Corollary(_) => "verify corollary",
                VerifyCmd::Tsystem { .. } => "verify tsystem",
                VerifyCmd::All { .. } => "verify all",
            },
        }
    }
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub cartan_file: Option<PathBuf>,
    pub cartan_type: Option<String>,
    pub command: Command,
    pub budget: usize,
    pub exact: bool,
    pub exact_cap: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// Budget precedence: `--budget`, then `BRAIDSEED_BUDGET` (both handled by
    /// clap), then the library default.
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let g = cli.global;
        let budget = match g.budget.as_deref() {
            None => braidseed::words::DEFAULT_BUDGET,
            Some(s) => s.trim().parse::<usize>().map_err(|_| input::invalid("budget", format!("{s:?} is not a count")))?,
        };
        if budget == 0 {
            return Err(input::invalid("budget", "must be at least 1"));
        }
        if g.cartan.is_some() && g.cartan_type.is_some() {
            return Err(input::invalid("cartan", "give either --cartan or --type"));
        }
        Ok(RunConfig {
            cartan_file: g.cartan,
            cartan_type: g.cartan_type,
            command: cli.command,
            budget,
            exact: g.exact,
            exact_cap: g.exact_cap,
            output: g.output,
            format: g.format,
        })
    }
}

/// Parses, dispatches and writes the report; returns the exit status.
pub fn run_cli(cli: Cli) -> i32 {
    let (format, output) = (cli.global.format, cli.global.output.clone());
    let name = cli.command.name();
    let report = match RunConfig::from_cli(cli) {
        Ok(cfg) => dispatch(&cfg),
        Err(e) => Report::error(name, e.info(), report::Metadata::default()),
    };
    let bytes = emit_report(&report, format);
    let written = match &output {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| e.to_string()),
        None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("braidseed: cannot write report: {e}");
        return 2;
    }
    report.verdict.exit_code()
}
