use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dethyp::cli::{self, Command, RunConfig, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "dethyp")]
#[command(about = "Exact finite-field checks for characteristic polynomials of matrix tuples")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Jacobian rank of the coefficient map at random points
    Rank(Common),
    /// Character-space dimensions at the clock and shift triple
    Grading(Common),
    /// q-binomial identities, or one value for `d a b [c]`
    Qbinom {
        #[command(flatten)]
        common: Common,
        #[arg(allow_negative_numbers = true)]
        values: Vec<i64>,
    },
    /// Coefficients of det(x0 I + x1 A1 + ...) for a tuple read from JSON
    Charpoly(Common),
    /// Transpose symmetry and the non-conjugacy witness
    Fiber(Common),
    /// Every check for the given size
    All(Common),
}

#[derive(Args)]
struct Common {
    /// Matrix size
    #[arg(long)]
    n: Option<usize>,

    /// Number of matrices
    #[arg(long, default_value_t = 3)]
    r: usize,

    /// Field characteristic (defaults to the smallest suitable prime)
    #[arg(long)]
    prime: Option<u64>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Random points sampled by `rank`
    #[arg(long, default_value_t = 5)]
    trials: usize,

    /// JSON matrix tuple for `charpoly`
    #[arg(long)]
    input: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Record wall time in the report
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            return ExitCode::from(code as u8);
        }
    };
    let (command, common, values) = match cli.command {
        Commands::Rank(c) => (Command::Rank, c, Vec::new()),
        Commands::Grading(c) => (Command::Grading, c, Vec::new()),
        Commands::Qbinom { common, values } => (Command::Qbinom, common, values),
        Commands::Charpoly(c) => (Command::Charpoly, c, Vec::new()),
        Commands::Fiber(c) => (Command::Fiber, c, Vec::new()),
        Commands::All(c) => (Command::All, c, Vec::new()),
    };
    let cfg = RunConfig {
        command,
        n: common.n,
        r: common.r,
        prime: common.prime,
        seed: common.seed,
        trials: common.trials,
        input: common.input,
        qbinom_args: values,
    };

    let start = Instant::now();
    let mut report = match cli::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if common.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }

    match common.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text if command == Command::Qbinom && !cfg.qbinom_args.is_empty() => {
            println!("{}", report.checks[0].observed)
        }
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    } as u8)
}
