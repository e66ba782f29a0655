//! `nccount`: batch front-end for the exceptional-object and curve-count engine.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nccount_core::NcError;

#[derive(Parser, Debug)]
#[command(name = "nccount", version, about = "Exceptional objects and non-commutative curves in quiver derived categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dynkin / extended Dynkin / wild type, rank of K0 and null root.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Exceptional modules with dimension entries <= window.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        window: i64,
    },
    /// Number of genus-l curves found inside the window.
    Count {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: Grid,
    },
    /// Whether T(from) embeds in T(into).
    Embed {
        #[arg(long)]
        from: String,
        #[arg(long)]
        into: String,
        /// Also search for a strong exceptional sequence realizing the embedding.
        #[arg(long)]
        witness: bool,
        /// Largest window tried by the witness search.
        #[arg(long, default_value_t = 6)]
        window: i64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Semi-orthogonality graph on the curves of a count run.
    Graph {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: Grid,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Builtin name (K(3), A~(2,1), D~(4), E(6), T(2,2,2), ...) or a JSON file.
    #[arg(long = "quiver", required = true)]
    quivers: Vec<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Grid {
    /// Comma-separated genera.
    #[arg(long, default_value = "1", value_delimiter = ',', allow_hyphen_values = true)]
    genus: Vec<i64>,
    #[arg(long, default_value_t = 6)]
    window: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Dot,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(NcError),
}

impl From<NcError> for CliError {
    fn from(e: NcError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_integrity() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("NCCOUNT_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Input(format!("NCCOUNT_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(e.to_string()))
}

fn write_output(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let (text, out) = match cli.command {
        Command::Classify { common } => {
            let qs = commands::load_quivers(&common.quivers)?;
            (commands::classify(&qs, common.format.unwrap_or(Format::Tsv))?, common.out)
        }
        Command::Enumerate { common, window } => {
            let qs = commands::load_quivers(&common.quivers)?;
            (commands::enumerate(&qs, window, common.format.unwrap_or(Format::Json))?, common.out)
        }
        Command::Count { common, grid } => {
            let qs = commands::load_quivers(&common.quivers)?;
            let text = commands::count(&qs, &grid.genus, grid.window, common.format.unwrap_or(Format::Tsv))?;
            (text, common.out)
        }
        Command::Embed { from, into, witness, window, format, out } => {
            (commands::embed(&from, &into, witness, window, format)?, out)
        }
        Command::Graph { common, grid } => {
            let qs = commands::load_quivers(&common.quivers)?;
            let text = commands::graph(&qs, &grid.genus, grid.window, common.format.unwrap_or(Format::Dot))?;
            (text, common.out)
        }
    };
    write_output(&text, out.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nccount: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
