//! `permwordle`: simulate games, construct offending secrets, count
//! offenders and check the construction exhaustively.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 input or limit error,
//! 3 no offender exists, 10 game loops forever, 11 game aborted.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use permwordle::report::{
    census_table, census_text, distribution_text, offender_text, theorem_text, to_json,
    transcript_text, CensusDoc, OffenderDoc, SequenceDoc, TheoremDoc, TranscriptDoc,
};
use permwordle::{
    census, construct_general, csl_censuses, default_max_turns, guess_distribution,
    parse_strategy_spec, play, verify_theorem, EnumerationLimit, GeneralOutcome, Outcome,
    Permutation, Strategy,
};

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NO_OFFENDER: u8 = 3;
const EXIT_LOOP: u8 = 10;
const EXIT_ABORTED: u8 = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "permwordle",
    version,
    about = "Permutation wordle strategy analysis"
)]
struct Cli {
    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    output: Format,

    /// Also write the structured report to this file (`.csv` writes the
    /// census table for `offenders` and `sequence`).
    #[arg(long, global = true)]
    report: Option<PathBuf>,

    /// Worker threads for enumeration; defaults to available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Play one game and print the turn-by-turn table.
    Simulate {
        /// cs:N | lcs:N | csl:N | csr:N | inductive:<right|left>:[..] | [[1],[2,1],..] | FILE
        #[arg(long)]
        strategy: String,
        /// Secret permutation, e.g. [4,1,5,2,3].
        #[arg(long)]
        secret: String,
        /// Turn budget; defaults to n^2 + n.
        #[arg(long)]
        max_turns: Option<usize>,
    },
    /// Construct an offending secret for a strategy.
    Construct {
        #[arg(long)]
        strategy: String,
    },
    /// Classify every secret for a strategy.
    Offenders {
        #[arg(long)]
        strategy: String,
        /// Include every offending secret in the output.
        #[arg(long)]
        list_offenders: bool,
    },
    /// Check the construction against every strategy of length n (n <= 5).
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Offender counts of CSL for n = 4..=max-n.
    Sequence {
        #[arg(long)]
        max_n: usize,
    },
    /// Histogram of solve turns over every secret.
    Distribution {
        #[arg(long)]
        strategy: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn emit<T: Serialize>(cli: &Cli, text: impl FnOnce() -> String, doc: &T) -> Result<(), Failure> {
    match cli.output {
        Format::Text => print!("{}", text()),
        Format::Json => print!("{}", to_json(doc)),
    }
    if let Some(path) = &cli.report {
        write_report(path, &to_json(doc))?;
    }
    Ok(())
}

fn write_report(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn strategy(spec: &str) -> Result<Strategy, Failure> {
    parse_strategy_spec(spec).map_err(Failure::input)
}

fn simulate(cli: &Cli, spec: &str, secret: &str, max_turns: Option<usize>) -> CmdResult {
    let strategy = strategy(spec)?;
    let secret: Permutation = secret.parse().map_err(Failure::input)?;
    let max_turns = max_turns.unwrap_or_else(|| default_max_turns(secret.len()));
    let transcript = play(&secret, &strategy, max_turns).map_err(Failure::input)?;
    emit(
        cli,
        || transcript_text(&transcript),
        &TranscriptDoc::from(&transcript),
    )?;
    Ok(match transcript.outcome {
        Outcome::Solved { .. } => EXIT_OK,
        Outcome::LoopDetected { .. } => EXIT_LOOP,
        Outcome::Aborted { .. } => EXIT_ABORTED,
    })
}

#[derive(Serialize)]
struct NoOffenderDoc {
    case: NoOffenderCase,
    message: &'static str,
}

#[derive(Serialize)]
struct NoOffenderCase {
    tag: &'static str,
}

const NO_OFFENDER: &str = "no offender: pure cyclic shift";

fn construct(cli: &Cli, spec: &str) -> CmdResult {
    let strategy = strategy(spec)?;
    match construct_general(&strategy) {
        Ok(GeneralOutcome::Offender(o)) => {
            emit(cli, || offender_text(&o), &OffenderDoc::from(&*o))?;
            Ok(EXIT_OK)
        }
        Ok(GeneralOutcome::NoOffender) => {
            let doc = NoOffenderDoc {
                case: NoOffenderCase { tag: "no_offender" },
                message: NO_OFFENDER,
            };
            emit(cli, || format!("{NO_OFFENDER}\n"), &doc)?;
            Ok(EXIT_NO_OFFENDER)
        }
        Err(e) => Err(Failure {
            code: EXIT_FAILED,
            message: e.to_string(),
        }),
    }
}

fn offenders(cli: &Cli, spec: &str, list: bool, limit: EnumerationLimit) -> CmdResult {
    let strategy = strategy(spec)?;
    let c = census(&strategy, list, limit).map_err(Failure::input)?;
    let doc = CensusDoc::from(&c);
    match cli.output {
        Format::Text => print!("{}", census_text(&c)),
        Format::Json => print!("{}", to_json(&doc)),
    }
    if let Some(path) = &cli.report {
        let body = if is_csv(path) {
            census_table([&c])
        } else {
            to_json(&doc)
        };
        write_report(path, &body)?;
    }
    Ok(EXIT_OK)
}

fn verify(cli: &Cli, n: usize, limit: EnumerationLimit) -> CmdResult {
    let report = verify_theorem(n, limit).map_err(Failure::input)?;
    emit(cli, || theorem_text(&report), &TheoremDoc::from(&report))?;
    Ok(if report.holds() { EXIT_OK } else { EXIT_FAILED })
}

fn sequence(cli: &Cli, max_n: usize, limit: EnumerationLimit) -> CmdResult {
    let censuses = csl_censuses(max_n, limit).map_err(Failure::input)?;
    let terms: Vec<(usize, u64)> = censuses
        .iter()
        .map(|c| (c.n, c.counts.offenders()))
        .collect();
    let doc = SequenceDoc::csl(&terms);
    match cli.output {
        Format::Text => {
            let line: Vec<String> = terms.iter().map(|(_, t)| t.to_string()).collect();
            println!("{}", line.join(", "));
        }
        Format::Json => print!("{}", to_json(&doc)),
    }
    if let Some(path) = &cli.report {
        let body = if is_csv(path) {
            census_table(&censuses)
        } else {
            to_json(&doc)
        };
        write_report(path, &body)?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DistributionDoc {
    n: usize,
    solved: std::collections::BTreeMap<usize, u64>,
    looping: u64,
}

fn distribution(cli: &Cli, spec: &str, limit: EnumerationLimit) -> CmdResult {
    let strategy = strategy(spec)?;
    let d = guess_distribution(&strategy, limit).map_err(Failure::input)?;
    let doc = DistributionDoc {
        n: d.n,
        solved: d.solved.clone(),
        looping: d.looping,
    };
    emit(cli, || distribution_text(&d), &doc)?;
    Ok(EXIT_OK)
}

fn run(cli: &Cli) -> CmdResult {
    if cli.report.as_deref().is_some_and(is_csv)
        && !matches!(
            cli.command,
            Command::Offenders { .. } | Command::Sequence { .. }
        )
    {
        return Err(Failure::input(
            "csv reports are only available for offenders and sequence",
        ));
    }
    let limit = EnumerationLimit::from_env();
    match &cli.command {
        Command::Simulate {
            strategy,
            secret,
            max_turns,
        } => simulate(cli, strategy, secret, *max_turns),
        Command::Construct { strategy } => construct(cli, strategy),
        Command::Offenders {
            strategy,
            list_offenders,
        } => offenders(cli, strategy, *list_offenders, limit),
        Command::Verify { n } => verify(cli, *n, limit),
        Command::Sequence { max_n } => sequence(cli, *max_n, limit),
        Command::Distribution { strategy } => distribution(cli, strategy, limit),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_INPUT);
        }
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
