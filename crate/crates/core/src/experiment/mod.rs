//! Synthetic crowds with planted archetypes, and the evaluation protocol
//! that profiles them on ground-truth questions and on test questions
//! separately, then compares every estimator against the theoretical
//! labels, the planted labels, and each other.

mod evaluate;
mod generate;

pub use evaluate::{
    evaluate, theoretical_label, ContributorEvaluation, EstimatorScores, EvalOptions,
    EvaluationReport, RunSummary, TheoreticalLabel,
};
pub use generate::{generate_crowd, ArchetypeParams, CrowdScenario, GeneratedCrowd};

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::io::{fmt_f64, write_atomic};
use crate::profile::{Expertise, ProfileError};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Profile(#[from] ProfileError),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("no ground-truth questions in the dataset")]
    NoGroundTruth,

    #[error("contributor {0:?} answered no ground-truth question")]
    NoGroundTruthAnswers(String),

    /// The two protocol runs must cover the same contributors.
    #[error("contributor {contributor:?} is missing from the {run} run")]
    MissingFromRun {
        contributor: String,
        run: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, ExperimentError>;

/// Planted contributor kind used by the generator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Archetype {
    Expert,
    Unqualified,
    Spammer,
}

impl Archetype {
    pub const ALL: [Archetype; 3] = [
        Archetype::Expert,
        Archetype::Unqualified,
        Archetype::Spammer,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Archetype::Expert => "expert",
            Archetype::Unqualified => "unqualified",
            Archetype::Spammer => "spammer",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|a| a.as_str() == name)
    }

    /// The label a perfect classifier would assign: only planted experts
    /// count as Expert.
    pub fn expected_expertise(self) -> Expertise {
        match self {
            Archetype::Expert => Expertise::Expert,
            Archetype::Unqualified | Archetype::Spammer => Expertise::NonExpert,
        }
    }
}

/// The four contributor classifiers the evaluation compares, in report
/// column order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Estimator {
    /// betP(Q) of the qualification mass on Ω2.
    Omega2,
    /// betP(R) of the reflection mass on Ω3.
    Omega3,
    /// betP(Q) of the Ω4 expertise mass marginalized onto Ω2.
    Omega4,
    /// The weighted global degree baseline.
    GlobalDegree,
}

impl Estimator {
    pub const ALL: [Estimator; 4] = [
        Estimator::Omega2,
        Estimator::Omega3,
        Estimator::Omega4,
        Estimator::GlobalDegree,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Estimator::Omega2 => "m_omega2",
            Estimator::Omega3 => "m_omega3",
            Estimator::Omega4 => "m_omega4",
            Estimator::GlobalDegree => "dg",
        }
    }
}

/// Writes the per-contributor histogram data behind the report: betP(Q) on
/// the ground-truth run, betP(Q) on the test run, and the global degree,
/// each against the theoretical label. Returns the written paths.
pub fn emit_histograms(report: &EvaluationReport, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    type Column = (
        &'static str,
        &'static str,
        Box<dyn Fn(&ContributorEvaluation) -> f64>,
    );
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let files: [Column; 3] = [
        (
            "histogram_betp_ground_truth.csv",
            "betp_q",
            Box::new(|c| c.ground_truth.betp_omega2),
        ),
        (
            "histogram_betp_test.csv",
            "betp_q",
            Box::new(|c| c.test.betp_omega2),
        ),
        (
            "histogram_dg_ground_truth.csv",
            "dg",
            Box::new(|c| c.ground_truth.dg),
        ),
    ];
    for (name, column, value) in files {
        let mut out = format!("contributor_id,{column},theoretical\n");
        for c in &report.contributors {
            out.push_str(&format!(
                "{},{},{}\n",
                c.contributor_id,
                fmt_f64(value(c)),
                c.theoretical.as_str()
            ));
        }
        let path = dir.join(name);
        write_atomic(&path, &out)?;
        written.push(path);
    }
    Ok(written)
}
