use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use causal_orbits::cli::{self, InputMode, OutputFormat, RunConfig, RunOutcome};
use causal_orbits::screening::{BinarizeRule, DEFAULT_THRESHOLD};

#[derive(Parser)]
#[command(
    name = "causal-orbits",
    version,
    about = "Causal screening and orbit/attractor analysis of monthly series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Screen, orient and analyze a series CSV, or analyze an edge list with --graph.
    Analyze {
        /// Wide series CSV (`-` for stdin).
        #[arg(required_unless_present = "graph", conflicts_with = "graph")]
        series: Option<PathBuf>,
        /// Edge-list file to analyze directly, skipping the statistics.
        #[arg(long, value_name = "EDGE_LIST")]
        graph: Option<PathBuf>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print the correlation matrix of a series CSV.
    Correlate {
        series: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args)]
struct Opts {
    /// Minimum correlation coefficient for a candidate pair.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, allow_negative_numbers = true)]
    threshold: f64,
    /// Rule turning series into events for the conditioning test.
    #[arg(long, value_enum, default_value_t = Rule::Median)]
    binarize: Rule,
    /// Required excess of P(B|A) over P(B|not A).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    margin: f64,
    /// Screen on |r| instead of r.
    #[arg(long)]
    absolute: bool,
    /// Output format (defaults to json for analyze, matrix for correlate).
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Median,
    Mean,
    Diff,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
    Matrix,
}

impl Opts {
    fn config(&self, default_format: OutputFormat, input: InputMode) -> RunConfig {
        RunConfig {
            threshold: self.threshold,
            binarize: match self.binarize {
                Rule::Median => BinarizeRule::AboveMedian,
                Rule::Mean => BinarizeRule::AboveMean,
                Rule::Diff => BinarizeRule::PositiveDiff,
            },
            margin: self.margin,
            absolute: self.absolute,
            format: match self.format {
                None => default_format,
                Some(Format::Json) => OutputFormat::Json,
                Some(Format::Dot) => OutputFormat::Dot,
                Some(Format::Text) => OutputFormat::Text,
                Some(Format::Matrix) => OutputFormat::Matrix,
            },
            input,
        }
    }
}

fn read_input(path: &Path) -> std::io::Result<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        std::fs::read(path)
    }
}

fn finish(outcome: RunOutcome) -> ExitCode {
    for line in &outcome.stderr {
        eprintln!("{line}");
    }
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(&outcome.stdout)
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(cli::EXIT_INPUT as u8);
    }
    ExitCode::from(outcome.status as u8)
}

type Runner = Box<dyn Fn(&[u8]) -> RunOutcome>;

fn main() -> ExitCode {
    let args = Cli::parse();
    let (path, run): (PathBuf, Runner) = match args.command {
        Command::Analyze {
            series,
            graph: Some(graph),
            opts,
        } => {
            debug_assert!(series.is_none());
            let cfg = opts.config(OutputFormat::Json, InputMode::EdgeList);
            let run = move |bytes: &[u8]| match std::str::from_utf8(bytes) {
                Ok(text) => cli::run_graph(&cfg, text),
                Err(e) => RunOutcome {
                    status: cli::EXIT_INPUT,
                    stdout: Vec::new(),
                    stderr: vec![format!("error: {e}")],
                },
            };
            (graph, Box::new(run))
        }
        Command::Analyze {
            series,
            graph: None,
            opts,
        } => {
            let cfg = opts.config(OutputFormat::Json, InputMode::SeriesCsv);
            (
                series.expect("clap requires a series path"),
                Box::new(move |b: &[u8]| cli::run_analyze(&cfg, b)),
            )
        }
        Command::Correlate { series, opts } => {
            let cfg = opts.config(OutputFormat::Matrix, InputMode::SeriesCsv);
            (
                series,
                Box::new(move |b: &[u8]| cli::run_correlate(&cfg, b)),
            )
        }
    };
    match read_input(&path) {
        Ok(bytes) => finish(run(&bytes)),
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            ExitCode::from(cli::EXIT_INPUT as u8)
        }
    }
}
