use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use verlinde::checks::run_suite;
use verlinde::cohft::verlinde_chern_character;
use verlinde::encoding::{class_to_json, class_to_text, graphs_to_json, graphs_to_text};
use verlinde::fusion::{FusionDatum, Label};
use verlinde::graphs::{enumerate_stable_graphs, Locus};
use verlinde::Error;

#[derive(Parser)]
#[command(name = "verlinde", version, about = "Exact Chern characters of Verlinde bundles")]
struct Cli {
    /// Worker threads; defaults to all available cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Chern character as a decorated graph sum.
    Ch(ChArgs),
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// List stable graphs with automorphism orders and loci.
    Graphs {
        #[arg(long)]
        genus: u32,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, default_value_t = 1)]
        max_edges: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    Sl2,
    Slr1,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct ChArgs {
    #[arg(long, value_enum)]
    algebra: Algebra,
    /// Level for sl2.
    #[arg(long)]
    level: Option<u32>,
    /// r for slr1.
    #[arg(long)]
    rank: Option<u32>,
    /// Fusion datum JSON file for `--algebra file`.
    #[arg(long)]
    datum: Option<std::path::PathBuf>,
    #[arg(long)]
    genus: u32,
    #[arg(short = 'n')]
    n: usize,
    /// Comma-separated labels, one per marking.
    #[arg(long, default_value = "")]
    labels: String,
    #[arg(long)]
    max_degree: u32,
    /// full, smooth, compact_type or rational_tails.
    #[arg(long, default_value = "full")]
    locus: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Drop λ₁ terms when the genus is 0.
    #[arg(long)]
    zero_lambda_genus0: bool,
}

enum Failure {
    Invalid(String),
    Unsupported(String),
    Verification(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_unsupported() {
            Failure::Unsupported(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

fn load_datum(args: &ChArgs) -> Result<FusionDatum, Failure> {
    let missing = |flag: &str| Failure::Invalid(format!("--algebra needs {flag}"));
    match args.algebra {
        Algebra::Sl2 => match args.level.ok_or_else(|| missing("--level"))? {
            0 => Err(Failure::Invalid("--level must be positive".into())),
            l => Ok(FusionDatum::sl2(l)),
        },
        Algebra::Slr1 => match args.rank.ok_or_else(|| missing("--rank"))? {
            r if r < 2 => Err(Failure::Invalid("--rank must be at least 2".into())),
            r => Ok(FusionDatum::slr_level1(r)),
        },
        Algebra::File => {
            let path = args.datum.as_ref().ok_or_else(|| missing("--datum"))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            Ok(FusionDatum::from_json(&text)?)
        }
    }
}

fn parse_labels(datum: &FusionDatum, text: &str) -> Result<Vec<Label>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(text
        .split(',')
        .map(|s| datum.label(s.trim()))
        .collect::<Result<_, _>>()?)
}

fn cmd_ch(args: &ChArgs) -> Result<String, Failure> {
    let datum = load_datum(args)?;
    let labels = parse_labels(&datum, &args.labels)?;
    if labels.len() != args.n {
        return Err(Error::LabelCount { expected: args.n, got: labels.len() }.into());
    }
    let locus: Locus = args.locus.parse()?;
    let mut ch = verlinde_chern_character(&datum, args.genus, &labels, args.max_degree)?.restrict(locus);
    if args.zero_lambda_genus0 && args.genus == 0 {
        ch = ch.zero_lambda();
    }
    Ok(match args.format {
        Format::Json => class_to_json(&ch) + "\n",
        Format::Text => class_to_text(&ch),
    })
}

fn cmd_verify(suite: &str) -> Result<String, Failure> {
    let checks = run_suite(suite.parse()?)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        println!("{c}");
    }
    println!("{} checks, {} failed", checks.len(), failed);
    if failed > 0 {
        return Err(Failure::Verification(failed));
    }
    Ok(String::new())
}

fn run(cli: Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Ch(args) => cmd_ch(args),
        Command::Verify { suite } => cmd_verify(suite),
        Command::Graphs { genus, n, max_edges, format } => {
            let graphs = enumerate_stable_graphs(*genus, *n, *max_edges)?;
            Ok(match format {
                Format::Json => graphs_to_json(&graphs) + "\n",
                Format::Text => graphs_to_text(&graphs),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error[invalid-input]: {first}");
            return ExitCode::from(2);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error[invalid-input]: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(k)) => {
            eprintln!("error[verification-failed]: {k} checks failed");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error[invalid-input]: {}", msg.replace('\n', " "));
            ExitCode::from(2)
        }
        Err(Failure::Unsupported(msg)) => {
            eprintln!("error[unsupported]: {}", msg.replace('\n', " "));
            ExitCode::from(3)
        }
    }
}
