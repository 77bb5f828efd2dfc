use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "wheel", version, about = "Layered wheels: construction, certificates and decompositions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for randomized steps (subset sampling, fixtures).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel stages; 0 lets rayon decide.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Abort with exit code 2 after this many seconds.
    #[arg(long, global = true)]
    pub deadline: Option<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Graph6,
    Dimacs,
    Dot,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Report {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Balance {
    Bounded,
    Unbounded,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a wheel prefix.
    Gen {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        triangle_free: bool,
        /// Vertex budget.
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the layered-wheel conditions on a wheel file.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        stroll_t: usize,
        #[arg(long, default_value_t = 2)]
        deg2_threshold: usize,
        #[arg(long, value_enum, default_value_t = Report::Json)]
        report: Report,
        /// Conditions whose failure makes the exit code 1 (comma separated).
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,6,8")]
        require: Vec<String>,
        /// Check the real graph instead of the total graph.
        #[arg(long)]
        real: bool,
    },
    /// Tree representation of a chordal trigraph.
    Rep {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chordal completion of a graph of treewidth at most t.
    Complete {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded-branch search from a vertex of the wheel.
    Bbp {
        #[arg(long)]
        wheel: PathBuf,
        /// Pattern trigraph (JSON).
        #[arg(long)]
        h: PathBuf,
        /// Subset of the wheel (JSON array of labels).
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        u: u32,
    },
    /// Tree decomposition of an H-free subset via balanced separators.
    Decompose {
        #[arg(long)]
        wheel: PathBuf,
        /// Subset (JSON array); sampled greedily with --seed when absent.
        #[arg(long)]
        x: Option<PathBuf>,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Balance::Bounded)]
        balance: Balance,
        /// Take downward paths from the bounded-branch search.
        #[arg(long)]
        bbp_paths: bool,
        /// Skip the induced-subgraph check of the subset.
        #[arg(long)]
        trust_hfree: bool,
        /// Target size of a sampled subset.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Contraction sequence of a wheel and its red/out degrees.
    Twinwidth {
        #[arg(long)]
        wheel: PathBuf,
        /// Write per-step records as CSV ("-" for stdout).
        #[arg(long)]
        per_step: Option<PathBuf>,
    },
    /// Exact oracles and certificate checkers.
    #[command(subcommand)]
    Oracle(Oracle),
    /// Pick k layers whose union is H-free.
    LayersSelect {
        /// Wheel file; the bundled girth-5 fixture is used when absent.
        #[arg(long)]
        wheel: Option<PathBuf>,
        #[arg(long)]
        h: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Oracle {
    /// Exact treewidth with an optimal decomposition.
    Tw {
        #[arg(long)]
        graph: PathBuf,
    },
    Girth {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Clique number with a maximum clique.
    Omega {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Verify a tree decomposition.
    CheckTd {
        /// Graph file; or a wheel file, optionally restricted by --x.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        x: Option<PathBuf>,
        #[arg(long)]
        td: PathBuf,
    },
    /// Build the layer bramble of a wheel, or check a given bramble.
    Bramble {
        #[arg(long)]
        graph: PathBuf,
        /// Layer index for the canonical bramble of a wheel file.
        #[arg(long)]
        layer: Option<usize>,
        /// Bramble file to check instead.
        #[arg(long)]
        bramble: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if let Some(s) = cli.global.deadline {
        if !(s.is_finite() && s > 0.0) {
            eprintln!("error: --deadline must be a positive number of seconds");
            return ExitCode::from(2);
        }
        std::thread::spawn(move || {
            std::thread::sleep(Duration::from_secs_f64(s));
            eprintln!("error: deadline of {s}s exceeded");
            std::process::exit(2);
        });
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::Failure::Check) => ExitCode::from(1),
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
