//! `skewpbw`: command-line driver for skew PBW extensions over finite rings.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pbw_core::harness::{Family, Property, SearchBudget, TheoremId};

use commands::{CliError, Outcome, Source};
use report::{render_human, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "skewpbw", version, about = "Exact computations and NI/NJ checks for skew PBW extensions over finite rings")]
struct Cli {
    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Definition file (TOML).
    file: Option<PathBuf>,

    /// Use a built-in corpus entry instead of a file.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

impl Input {
    fn source(&self) -> Source {
        match (&self.file, &self.builtin) {
            (Some(p), _) => Source::File(p.clone()),
            (None, Some(n)) => Source::Builtin(n.clone()),
            (None, None) => unreachable!("clap requires one input"),
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Largest total degree in the enumeration window.
    #[arg(long, default_value_t = 4)]
    degree: u32,

    /// Largest number of terms per enumerated polynomial.
    #[arg(long, default_value_t = 3)]
    support: usize,

    /// Largest power tried when probing nilpotency.
    #[arg(long, default_value_t = 16)]
    exponent: u32,

    /// Cap on the number of probe evaluations.
    #[arg(long, default_value_t = 1_000_000)]
    pairs: u64,
}

impl BudgetArgs {
    fn budget(self) -> Result<SearchBudget, CliError> {
        Ok(SearchBudget::new(self.degree, self.support, self.exponent, self.pairs as u128)?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the ring, the maps and the presentation.
    Verify(Input),
    /// List N, the prime, Levitzki and upper nil radicals, and J.
    Radicals {
        #[command(flatten)]
        input: Input,
        /// Ideal enumeration cap.
        #[arg(long)]
        ideal_cap: Option<usize>,
    },
    /// Ring profile, map predicates and presentation flags.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ideal_cap: Option<usize>,
    },
    /// Normal form of the product of two expressions.
    Mul {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Probe an expression for nilpotency.
    Nilpotent {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 16)]
        cap: u32,
    },
    /// Run theorem checks T1..T10.
    Check {
        #[command(flatten)]
        input: Input,
        /// Theorem id such as T3; repeat for several. Defaults to all
        /// that apply.
        #[arg(long = "theorem", value_name = "ID")]
        theorems: Vec<TheoremId>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Evaluate conclusions even when a precondition fails.
        #[arg(long)]
        force: bool,
    },
    /// Search a family of extensions for a counterexample.
    Search {
        #[arg(long, value_enum)]
        property: PropertyArg,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Stop starting new members after this many seconds.
        #[arg(long)]
        time_limit: Option<u64>,
    },
    /// The built-in corpus.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    /// Names and summaries of every entry.
    List,
    /// Write an entry as a definition file.
    Export {
        name: String,
        /// Output path; prints to stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum PropertyArg {
    NotNi,
    NotWeakCompatible,
    NotSigmaRigid,
    NiButBaseReduced,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::NotNi => Property::NotNi,
            PropertyArg::NotWeakCompatible => Property::NotWeakCompatible,
            PropertyArg::NotSigmaRigid => Property::NotSigmaRigid,
            PropertyArg::NiButBaseReduced => Property::NiButBaseReduced,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FamilyArg {
    Swap,
    DerivationInvariantNil,
    IdentitySystems,
}

impl FamilyArg {
    fn family(self) -> Family {
        match self {
            FamilyArg::Swap => Family::swap(),
            FamilyArg::DerivationInvariantNil => Family::derivation_invariant_nil(),
            FamilyArg::IdentitySystems => Family::identity_systems(),
        }
    }
}

fn verb(c: &Command) -> &'static str {
    match c {
        Command::Verify(_) => "verify",
        Command::Radicals { .. } => "radicals",
        Command::Classify { .. } => "classify",
        Command::Mul { .. } => "mul",
        Command::Nilpotent { .. } => "nilpotent",
        Command::Check { .. } => "check",
        Command::Search { .. } => "search",
        Command::Corpus(_) => "corpus",
    }
}

/// Runs the command. The second value is raw text to print in place of the
/// human report.
fn run(command: &Command) -> Result<(Outcome, Option<String>), CliError> {
    let plain = |o: Outcome| (o, None);
    Ok(match command {
        Command::Verify(input) => plain(commands::verify(&input.source())?),
        Command::Radicals { input, ideal_cap } => plain(commands::radicals(&input.source(), *ideal_cap)?),
        Command::Classify { input, ideal_cap } => plain(commands::classify(&input.source(), *ideal_cap)?),
        Command::Mul { input, lhs, rhs } => plain(commands::mul(&input.source(), lhs, rhs)?),
        Command::Nilpotent { input, expr, cap } => plain(commands::nilpotent(&input.source(), expr, *cap)?),
        Command::Check { input, theorems, budget, force } => {
            plain(commands::check(&input.source(), theorems, budget.budget()?, *force)?)
        }
        Command::Search { property, family, budget, time_limit } => {
            let mut b = budget.budget()?;
            b.time_hint = time_limit.map(Duration::from_secs);
            plain(commands::search((*property).into(), &family.family(), b)?)
        }
        Command::Corpus(CorpusCommand::List) => plain(commands::corpus_list()?),
        Command::Corpus(CorpusCommand::Export { name, output }) => commands::corpus_export(name, output.as_deref())?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, raw) = match run(&cli.command) {
        Ok((o, raw)) => (
            Report {
                command: std::env::args().collect(),
                verb: verb(&cli.command).into(),
                status: o.status,
                exit_code: o.status.exit_code(),
                error: None,
                result: o.result,
                timings_ms: o.timings,
            },
            raw,
        ),
        Err(e) => (
            Report {
                command: std::env::args().collect(),
                verb: verb(&cli.command).into(),
                status: Status::Error,
                exit_code: Status::Error.exit_code(),
                error: Some(e.to_string()),
                result: serde_json::Value::Null,
                timings_ms: Vec::new(),
            },
            None,
        ),
    };
    let text = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&report).expect("report serialises"))
    } else if let Some(e) = &report.error {
        eprintln!("error: {e}");
        String::new()
    } else if let Some(text) = raw {
        text
    } else {
        let status = serde_json::to_value(report.status).expect("status");
        format!("{}status: {}\n", render_human(&report.result), status.as_str().unwrap_or("?"))
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(report.exit_code as u8)
}
