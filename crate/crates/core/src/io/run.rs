//! The two end-to-end runs behind the CLI subcommands: profile a dataset
//! from disk, or generate a synthetic crowd and evaluate it. Both write
//! their reports under the configured output directory.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::baselines::{dg_results, BaselineResult};
use crate::experiment::{
    emit_histograms, evaluate, generate_crowd, Estimator, EvalOptions, EvaluationReport,
    ExperimentError, GeneratedCrowd, RunSummary,
};
use crate::profile::{build_profiles, ContributorProfile, ProfileConfig, ProfileError};

use super::answers::{load_answers, load_questions, write_answers, write_questions};
use super::config::{ConfigError, RunConfig};
use super::report::{write_evaluation, write_planted, write_profile_report};
use super::LoadError;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Load(#[from] LoadError),

    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error(transparent)]
    Profile(#[from] ProfileError),

    #[error(transparent)]
    Experiment(#[from] ExperimentError),

    #[error("{}: {source}", .path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl RunError {
    /// Process exit code: bad input or configuration is 2, failures while
    /// writing results are 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Write { .. } => 1,
            _ => 2,
        }
    }
}

fn write_err(path: &Path) -> impl FnOnce(std::io::Error) -> RunError + '_ {
    move |source| RunError::Write {
        path: path.to_path_buf(),
        source,
    }
}

fn profile_config(cfg: &RunConfig) -> ProfileConfig {
    ProfileConfig {
        alphas: cfg.alphas,
        sigma: cfg.sigma,
        cte: cfg.cte,
        alpha_fn: cfg.alpha_fn,
        filter: cfg.filter,
        time_cap_factor: None,
    }
}

/// Result of a profile run: the profiles and baselines behind the report,
/// plus every file written.
#[derive(Debug)]
pub struct ProfileOutput {
    pub profiles: Vec<ContributorProfile>,
    pub baselines: Vec<BaselineResult>,
    pub written: Vec<PathBuf>,
}

fn required_path<'a>(value: &'a Option<PathBuf>, field: &str) -> Result<&'a Path, RunError> {
    value.as_deref().ok_or_else(|| {
        RunError::Config(ConfigError::Field {
            field: field.to_string(),
            reason: "required (flag or config key)".to_string(),
        })
    })
}

/// Loads the datasets named by the config, builds all profiles and the
/// global-degree baseline, and writes `profiles.csv` into the output
/// directory.
pub fn run_profile(cfg: &RunConfig) -> Result<ProfileOutput, RunError> {
    let questions_path = required_path(&cfg.questions, "questions")?;
    let answers_path = required_path(&cfg.answers, "answers")?;
    let questions = load_questions(questions_path)?;
    let answers = load_answers(answers_path, &questions)?;

    let profiles = build_profiles(&answers, &questions, &profile_config(cfg))?;
    let baselines = dg_results(&profiles, cfg.beta, cfg.sigma)?;

    std::fs::create_dir_all(&cfg.output).map_err(write_err(&cfg.output))?;
    let path = cfg.output.join("profiles.csv");
    write_profile_report(&path, &profiles, &baselines)?;
    Ok(ProfileOutput {
        profiles,
        baselines,
        written: vec![path],
    })
}

/// Result of an experiment run: the generated crowd, the evaluation, and
/// every file written.
#[derive(Debug)]
pub struct ExperimentOutput {
    pub crowd: GeneratedCrowd,
    pub report: EvaluationReport,
    pub written: Vec<PathBuf>,
}

/// Generates the configured scenario, writes the dataset itself, evaluates
/// it, and writes the evaluation reports, per-run profile reports, and
/// histogram data.
pub fn run_experiment(cfg: &RunConfig) -> Result<ExperimentOutput, RunError> {
    let crowd = generate_crowd(&cfg.scenario)?;
    let out = &cfg.output;
    std::fs::create_dir_all(out).map_err(write_err(out))?;

    let mut written = Vec::new();
    let answers_path = out.join("answers.csv");
    write_answers(&answers_path, &crowd.answers, &crowd.questions)?;
    written.push(answers_path);
    let questions_path = out.join("questions.csv");
    write_questions(&questions_path, &crowd.questions)?;
    written.push(questions_path);
    let planted_path = out.join("planted.csv");
    write_planted(&planted_path, &crowd.planted)?;
    written.push(planted_path);

    let opts = EvalOptions {
        alphas: cfg.alphas,
        sigma: cfg.sigma,
        beta: cfg.beta,
        cte: cfg.cte,
        alpha_fn: cfg.alpha_fn,
        time_cap_factor: None,
    };
    let report = evaluate(
        &crowd.answers,
        &crowd.questions,
        Some(&crowd.planted),
        &opts,
    )?;
    written.extend(write_evaluation(out, &report)?);

    for (name, filter) in [
        (
            "profiles_ground_truth.csv",
            crate::profile::QuestionFilter::GroundTruthOnly,
        ),
        (
            "profiles_test.csv",
            crate::profile::QuestionFilter::TestOnly,
        ),
    ] {
        let mut pc = profile_config(cfg);
        pc.filter = filter;
        let profiles = build_profiles(&crowd.answers, &crowd.questions, &pc)?;
        let baselines = dg_results(&profiles, cfg.beta, cfg.sigma)?;
        let path = out.join(name);
        write_profile_report(&path, &profiles, &baselines)?;
        written.push(path);
    }

    written.extend(emit_histograms(&report, out).map_err(write_err(out))?);

    Ok(ExperimentOutput {
        crowd,
        report,
        written,
    })
}

fn push_pct_row(table: &mut String, label: &str, values: &[f64; 4]) {
    let _ = write!(table, "{label:<14}");
    for v in values {
        let _ = write!(table, " {v:>9.1}");
    }
    table.push('\n');
}

fn push_run_block(table: &mut String, run: &RunSummary) {
    push_pct_row(table, run.run, &run.tbc_vs_theoretical);
}

/// Renders the classification summary printed after an experiment run:
/// per-run TBC of every estimator against the theoretical labels and the
/// planted archetypes, expert counts, and the agreement statistics.
pub fn summary_table(report: &EvaluationReport) -> String {
    let mut t = String::new();
    let runs = [&report.ground_truth_run, &report.test_run];

    let _ = writeln!(
        t,
        "classification rates, sigma = {}, beta = {}",
        report.sigma, report.beta
    );
    let _ = write!(t, "{:<14}", "run");
    for e in Estimator::ALL {
        let _ = write!(t, " {:>9}", e.name());
    }
    t.push('\n');

    let _ = writeln!(t, "TBC vs theoretical labels (%)");
    for run in runs {
        push_run_block(&mut t, run);
    }
    if runs.iter().any(|r| r.tbc_vs_planted.is_some()) {
        let _ = writeln!(t, "TBC vs planted archetypes (%)");
        for run in runs {
            if let Some(p) = &run.tbc_vs_planted {
                push_pct_row(&mut t, run.run, p);
            }
        }
    }

    let _ = writeln!(t, "experts found (of {})", report.contributors.len());
    for run in runs {
        let _ = write!(t, "{:<14}", run.run);
        for c in run.expert_counts {
            let _ = write!(t, " {c:>9}");
        }
        t.push('\n');
    }

    let _ = writeln!(t, "agreement between estimators (%)");
    for run in runs {
        for a in Estimator::ALL {
            for b in Estimator::ALL {
                if a.index() >= b.index() {
                    continue;
                }
                let _ = writeln!(
                    t,
                    "{:<14} {:>9} ~ {:<9} {:>6.1}",
                    run.run,
                    a.name(),
                    b.name(),
                    run.agreement[a.index()][b.index()]
                );
            }
        }
    }
    let _ = writeln!(t, "agreement between runs (%)");
    let mut cross = BTreeMap::new();
    for e in Estimator::ALL {
        cross.insert(e.name(), report.cross_run_agreement[e.index()]);
    }
    for (name, pct) in cross {
        let _ = writeln!(t, "{name:<14} {pct:>6.1}");
    }
    t
}
