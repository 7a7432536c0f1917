use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use cofil_cli::{read_filtration, run, to_json, Command, Options, EXIT_ERROR};
use cofil_core::chains::Ring;
use cofil_core::persistence::DEFAULT_SEARCH_BUDGET;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sub {
    /// Order-minimal spanning tree at one grade
    Tree,
    /// Order-minimal tree at every grade plus the complement check
    Cofiltration,
    /// Search for nested spanning trees (exit 2 if none exist)
    Subfiltration,
    /// Upper set precover and its rank table against Z1
    Precover,
    /// Greedy n-spanning complex at one grade
    SpanN,
    /// Homology table at every grade
    Homology,
    /// Run every invariant check on the input
    Verify,
}

/// Spanning trees, cofiltrations and upper set precovers of filtered
/// simplicial complexes.
#[derive(Debug, Parser)]
#[command(name = "cofil", version)]
struct Cli {
    #[arg(value_enum)]
    command: Sub,
    /// Filtration file
    file: String,
    /// Coefficients: z, q or zp:<prime>
    #[arg(long, default_value = "z", value_parser = parse_ring)]
    coeff: Ring,
    /// Grade id, e.g. `1,2` on a grid (default: last grade)
    #[arg(long)]
    grade: Option<String>,
    /// Dimension for span-n
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Step budget for the subfiltration search
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
}

fn parse_ring(s: &str) -> Result<Ring, String> {
    s.parse::<Ring>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let command = match cli.command {
        Sub::Tree => Command::Tree,
        Sub::Cofiltration => Command::Cofiltration,
        Sub::Subfiltration => Command::Subfiltration,
        Sub::Precover => Command::Precover,
        Sub::SpanN => Command::SpanN,
        Sub::Homology => Command::Homology,
        Sub::Verify => Command::Verify,
    };
    let opts = Options { ring: cli.coeff, grade: cli.grade, n: cli.n, budget: cli.budget };
    let outcome = read_filtration(&cli.file).and_then(|f| run(command, &f, &opts));
    match outcome {
        Ok(o) => {
            print!("{}", to_json(&o.report));
            ExitCode::from(o.exit)
        }
        Err(e) => {
            eprintln!("cofil: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
