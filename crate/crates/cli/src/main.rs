//! Command-line front end: `profile` runs the contributor pipeline on a
//! dataset from disk, `experiment` generates and evaluates a synthetic
//! crowd, `combine` fuses hand-written mass files for poking at the
//! belief calculus. Exit codes: 0 success, 1 internal/write error, 2
//! user or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crowd_belief::belief::{combine_conjunctive, combine_yager, BeliefError};
use crowd_belief::io::{
    fmt_f64, run_experiment, run_profile, summary_table, ConfigFile, Overrides, RunConfig, RunError,
};
use crowd_belief::profile::QuestionFilter;
use crowd_belief::{Frame, MassFunction, SubsetMask};

#[derive(Parser)]
#[command(
    name = "crowd-belief",
    version,
    about = "Belief-function profiling of crowdsourcing contributors"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalFlags {
    /// Run configuration file (TOML); flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Expert threshold on betP(Q), strictly inside (0,1).
    #[arg(long, global = true)]
    sigma: Option<f64>,

    /// Exactness weight of the global-degree baseline, in [0,1].
    #[arg(long, global = true)]
    beta: Option<f64>,

    /// Mass kept on the unexpected reflection label, in [0,0.5).
    #[arg(long, global = true)]
    cte: Option<f64>,

    /// Restrict profiling to one question kind.
    #[arg(long, global = true, value_parser = parse_filter, value_name = "all|ground-truth-only|test-only")]
    filter: Option<QuestionFilter>,

    /// Crowd generator seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

fn parse_filter(name: &str) -> Result<QuestionFilter, String> {
    QuestionFilter::from_name(name)
        .ok_or_else(|| "expected all, ground-truth-only or test-only".to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Profile a crowd dataset and write profiles.csv.
    Profile {
        /// Answer log (CSV: contributor_id,question_id,answer,certainty,response_time_s).
        #[arg(long, value_name = "FILE")]
        answers: Option<PathBuf>,

        /// Question descriptions (CSV: question_id,frame_size,t_th_s,is_ground_truth,expected_answer).
        #[arg(long, value_name = "FILE")]
        questions: Option<PathBuf>,

        /// Output directory.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },

    /// Generate a synthetic crowd, evaluate every estimator on it, and
    /// write the dataset, reports and histogram data.
    Experiment {
        /// Output directory.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },

    /// Combine mass functions from files over one frame and print the
    /// fused mass, its conflict, betP and the decided label.
    Combine {
        /// Comma-separated frame labels, e.g. "a,b,c".
        #[arg(long)]
        frame: String,

        /// Combination rule.
        #[arg(long, value_enum, default_value_t = Rule::Conjunctive)]
        rule: Rule,

        /// Mass files: CSV with header "subset,mass", subsets as |-joined
        /// labels, "*" for the full frame, empty for the empty set.
        #[arg(required = true, value_name = "FILE")]
        masses: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Conjunctive,
    Yager,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<RunError> for CliError {
    fn from(e: RunError) -> Self {
        CliError {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

impl From<BeliefError> for CliError {
    fn from(e: BeliefError) -> Self {
        CliError::input(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Profile {
            answers,
            questions,
            out,
        } => {
            let cfg = resolve(&cli.global, answers, questions, out)?;
            let output = run_profile(&cfg)?;
            println!(
                "wrote {} ({} contributors)",
                output.written[0].display(),
                output.profiles.len()
            );
            Ok(())
        }
        Command::Experiment { out } => {
            let cfg = resolve(&cli.global, None, None, out)?;
            let output = run_experiment(&cfg)?;
            print!("{}", summary_table(&output.report));
            println!("reports in {}", cfg.output.display());
            Ok(())
        }
        Command::Combine {
            frame,
            rule,
            masses,
        } => combine_files(&frame, rule, &masses),
    }
}

fn resolve(
    global: &GlobalFlags,
    answers: Option<PathBuf>,
    questions: Option<PathBuf>,
    output: Option<PathBuf>,
) -> Result<RunConfig, CliError> {
    let file = match &global.config {
        Some(path) => ConfigFile::load(path).map_err(|e| CliError::input(e.to_string()))?,
        None => ConfigFile::default(),
    };
    let flags = Overrides {
        answers,
        questions,
        output,
        sigma: global.sigma,
        beta: global.beta,
        cte: global.cte,
        filter: global.filter,
        seed: global.seed,
    };
    RunConfig::resolve(&file, &flags).map_err(|e| CliError::input(e.to_string()))
}

fn combine_files(labels: &str, rule: Rule, files: &[PathBuf]) -> Result<(), CliError> {
    let frame = Frame::new(labels.split(','))?;
    let sources = files
        .iter()
        .map(|path| load_mass(&frame, path))
        .collect::<Result<Vec<_>, _>>()?;
    let combined = match rule {
        Rule::Conjunctive => combine_conjunctive(&sources),
        Rule::Yager => combine_yager(&sources),
    }?;

    println!("m = {combined}");
    println!("conflict = {}", fmt_f64(combined.conflict()));
    match combined.pignistic() {
        Ok(betp) => {
            let rendered = frame
                .labels()
                .iter()
                .zip(&betp)
                .map(|(label, p)| format!("{label}={}", fmt_f64(*p)))
                .collect::<Vec<_>>()
                .join(", ");
            println!("betP: {rendered}");
            println!("decision: {}", combined.decide()?);
        }
        Err(_) => println!("betP undefined: all mass on the empty set"),
    }
    Ok(())
}

fn load_mass(frame: &Frame, path: &Path) -> Result<MassFunction, CliError> {
    let err = |line: usize, reason: String| {
        CliError::input(format!("{} line {line}: {reason}", path.display()))
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "subset,mass")) => {}
        Some((_, other)) => {
            return Err(err(
                1,
                format!("expected header \"subset,mass\", found {other:?}"),
            ))
        }
        None => return Err(err(1, "empty file".to_string())),
    }
    let mut pairs = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let Some((subset, mass)) = line.rsplit_once(',') else {
            return Err(err(line_no, format!("not a subset,mass row: {line:?}")));
        };
        let mask = match subset {
            "*" => frame.full_mask(),
            "" => SubsetMask::EMPTY,
            tokens => frame
                .subset(tokens.split('|'))
                .map_err(|e| err(line_no, e.to_string()))?,
        };
        let value: f64 = mass
            .parse()
            .map_err(|_| err(line_no, format!("mass {mass:?} is not a number")))?;
        pairs.push((mask, value));
    }
    MassFunction::from_masses(frame.clone(), pairs)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}
