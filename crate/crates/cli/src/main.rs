//! Command-line front end for the page-based extractive summarizer.
//!
//! Exit codes: 0 success, 1 failed check, 2 missing or unusable input,
//! 3 unwritable output, 4 corrupt model file.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Overrides, RunConfig};

#[derive(Parser)]
#[command(
    name = "pagesum",
    version,
    about = "Train, run, and evaluate a page-based extractive summarizer"
)]
struct Cli {
    /// Flat key=value config file; explicit flags override file values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Seed for weight init, shuffling, splitting, and generation.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Sentence slots per page.
    #[arg(long, global = true, value_name = "N")]
    page_len: Option<usize>,
    /// Sentences kept per page and in the final summary.
    #[arg(long, global = true, value_name = "N")]
    summary_len: Option<usize>,
    /// Model file path.
    #[arg(long, global = true, value_name = "PATH")]
    model: Option<PathBuf>,
    /// Corpus root holding docs/ and summaries/.
    #[arg(long, global = true, value_name = "DIR")]
    corpus: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train a scoring model on a labeled corpus and write it to disk.
    Train,
    /// Summarize a plain-text file with a trained model.
    Summarize {
        /// Input text file.
        input: PathBuf,
        /// Also print each kept sentence's original index.
        #[arg(long)]
        indices: bool,
    },
    /// Score the held-out split and write a CSV report.
    Eval {
        /// CSV output path (default eval.csv).
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Train and evaluate a fresh model per page length.
    Sweep {
        /// Comma-separated page lengths to try.
        #[arg(
            long,
            value_name = "N,N,...",
            value_delimiter = ',',
            default_value = "10,20,40,50,100,200"
        )]
        page_lens: Vec<usize>,
        /// CSV output path (default sweep.csv).
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Compare analytic gradients against finite differences.
    Gradcheck {
        #[arg(long, hide = true)]
        corrupt_analytic: bool,
    },
    /// Generate a synthetic labeled corpus.
    Gencorpus {
        /// Number of documents to generate.
        #[arg(long, default_value_t = 200)]
        n_docs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let csv = match &cli.command {
        Command::Eval { csv } => csv.clone(),
        Command::Sweep { csv, .. } => csv.clone(),
        _ => None,
    };
    let flags = Overrides {
        seed: cli.seed,
        page_len: cli.page_len,
        summary_len: cli.summary_len,
        model: cli.model.clone(),
        corpus: cli.corpus.clone(),
        csv,
    };
    let cfg = match RunConfig::resolve(cli.config.as_deref(), &flags) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(commands::EXIT_BAD_INPUT as u8);
        }
    };
    let result = match &cli.command {
        Command::Train => commands::train_cmd(&cfg),
        Command::Summarize { input, indices } => commands::summarize_cmd(&cfg, input, *indices),
        Command::Eval { .. } => commands::eval_cmd(&cfg),
        Command::Sweep { page_lens, .. } => commands::sweep_cmd(&cfg, page_lens),
        Command::Gradcheck { corrupt_analytic } => commands::gradcheck_cmd(&cfg, *corrupt_analytic),
        Command::Gencorpus { n_docs } => commands::gencorpus_cmd(&cfg, *n_docs),
    };
    match result {
        Ok(()) => ExitCode::from(commands::EXIT_OK as u8),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code as u8)
        }
    }
}
