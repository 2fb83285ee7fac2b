use std::collections::BTreeMap;

use crate::baselines::{dg_classify, global_degree, majority_votes};
use crate::belief::{Frame, SubsetMask};
use crate::profile::{
    answer_mass, build_profiles, AlphaFn, AlphaTable, ContributorAnswer, ContributorProfile,
    Expertise, ProfileConfig, ProfileError, QuestionFilter, QuestionMap,
};

use super::{Archetype, Estimator, ExperimentError, Result};

/// Parameters of one evaluation run.
#[derive(Clone, Debug)]
pub struct EvalOptions {
    pub alphas: AlphaTable,
    pub sigma: f64,
    pub beta: f64,
    pub cte: f64,
    pub alpha_fn: AlphaFn,
    pub time_cap_factor: Option<f64>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            alphas: AlphaTable::default(),
            sigma: 0.5,
            beta: 0.5,
            cte: 0.05,
            alpha_fn: AlphaFn::default(),
            time_cap_factor: None,
        }
    }
}

impl EvalOptions {
    fn profile_config(&self, filter: QuestionFilter) -> ProfileConfig {
        ProfileConfig {
            alphas: self.alphas,
            sigma: self.sigma,
            cte: self.cte,
            alpha_fn: self.alpha_fn,
            filter,
            time_cap_factor: self.time_cap_factor,
        }
    }
}

/// The benchmark label derived from ground-truth questions alone.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct TheoreticalLabel {
    pub expertise: Expertise,
    /// Fraction of ground-truth questions whose decided answer matched.
    pub tbc: f64,
}

/// Scores a contributor against the ground-truth questions: each answer
/// mass is decided pignistically (lowest index on ties) and counts as
/// correct when the decided label is the expected singleton. Expert iff
/// the correct fraction strictly exceeds sigma.
pub fn theoretical_label(
    contributor: &str,
    answers: &[ContributorAnswer],
    specs: &QuestionMap,
    alphas: &AlphaTable,
    sigma: f64,
) -> Result<TheoreticalLabel> {
    if !specs.values().any(|s| s.is_ground_truth()) {
        return Err(ExperimentError::NoGroundTruth);
    }
    let mut total = 0usize;
    let mut correct = 0usize;
    for a in answers.iter().filter(|a| a.contributor_id == contributor) {
        let Some(spec) = specs.get(&a.question_id) else {
            return Err(ProfileError::UnknownQuestion(a.question_id.clone()).into());
        };
        let Some(expected) = spec.expected_answer else {
            continue;
        };
        let mass = answer_mass(a, spec, alphas)?;
        let decided = mass.decide_index().map_err(ProfileError::from)?;
        total += 1;
        if SubsetMask::singleton(decided) == expected {
            correct += 1;
        }
    }
    if total == 0 {
        return Err(ExperimentError::NoGroundTruthAnswers(
            contributor.to_string(),
        ));
    }
    let tbc = correct as f64 / total as f64;
    Ok(TheoreticalLabel {
        expertise: Expertise::from_score(tbc, sigma),
        tbc,
    })
}

/// One run's scores for one contributor, plus the thresholded decisions in
/// [`Estimator::ALL`] order.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct EstimatorScores {
    pub betp_omega2: f64,
    pub betp_omega3: f64,
    pub betp_omega4: f64,
    pub dg: f64,
    pub decisions: [Expertise; 4],
}

impl EstimatorScores {
    fn new(profile: &ContributorProfile, dg: f64, sigma: f64) -> Self {
        EstimatorScores {
            betp_omega2: profile.betp_qualification,
            betp_omega3: profile.betp_reflection,
            betp_omega4: profile.betp_qualified,
            dg,
            decisions: [
                Expertise::from_score(profile.betp_qualification, sigma),
                Expertise::from_score(profile.betp_reflection, sigma),
                profile.decision,
                dg_classify(dg, sigma),
            ],
        }
    }

    pub fn score(&self, estimator: Estimator) -> f64 {
        match estimator {
            Estimator::Omega2 => self.betp_omega2,
            Estimator::Omega3 => self.betp_omega3,
            Estimator::Omega4 => self.betp_omega4,
            Estimator::GlobalDegree => self.dg,
        }
    }

    pub fn decision(&self, estimator: Estimator) -> Expertise {
        self.decisions[estimator.index()]
    }
}

/// Everything the evaluation derives for one contributor.
#[derive(Clone, Debug)]
pub struct ContributorEvaluation {
    pub contributor_id: String,
    /// The generator's planted archetype, when known.
    pub archetype: Option<Archetype>,
    pub tbc: f64,
    pub theoretical: Expertise,
    /// Scores from profiles built on ground-truth questions only.
    pub ground_truth: EstimatorScores,
    /// Scores from profiles built on test questions only.
    pub test: EstimatorScores,
}

/// Aggregates for one run (ground-truth-only or test-only profiles).
/// Estimator-indexed arrays follow [`Estimator::ALL`] order; rates are
/// percentages in [0,100].
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub run: &'static str,
    pub n_contributors: usize,
    /// Share of contributors whose decision matches the theoretical label.
    pub tbc_vs_theoretical: [f64; 4],
    /// Share matching the planted archetype, when archetypes are known.
    pub tbc_vs_planted: Option<[f64; 4]>,
    pub expert_counts: [usize; 4],
    /// Pairwise same-decision share between estimators; symmetric with an
    /// exact 100 diagonal.
    pub agreement: [[f64; 4]; 4],
}

/// The full protocol output.
#[derive(Clone, Debug)]
pub struct EvaluationReport {
    pub sigma: f64,
    pub beta: f64,
    pub contributors: Vec<ContributorEvaluation>,
    pub ground_truth_run: RunSummary,
    pub test_run: RunSummary,
    /// Share of contributors on which an estimator's ground-truth-run and
    /// test-run decisions coincide, per estimator.
    pub cross_run_agreement: [f64; 4],
    /// Majority answer per question over the full dataset, rendered as
    /// `|`-joined labels.
    pub majority: BTreeMap<String, String>,
}

fn percent(count: usize, n: usize) -> f64 {
    100.0 * count as f64 / n as f64
}

fn render_answer(frame: &Frame, mask: SubsetMask) -> String {
    let labels: Vec<&str> = mask
        .iter_indices()
        .filter(|&i| i < frame.len())
        .map(|i| frame.label(i))
        .collect();
    labels.join("|")
}

fn summarize(run: &'static str, rows: &[(&ContributorEvaluation, &EstimatorScores)]) -> RunSummary {
    let n = rows.len();
    let mut tbc_vs_theoretical = [0.0; 4];
    let mut expert_counts = [0usize; 4];
    let mut agreement = [[100.0; 4]; 4];
    let planted_total = rows.iter().filter(|(c, _)| c.archetype.is_some()).count();
    let mut planted_hits = [0usize; 4];
    for e in Estimator::ALL {
        let i = e.index();
        let mut match_theory = 0usize;
        for (c, s) in rows {
            let d = s.decisions[i];
            if d == Expertise::Expert {
                expert_counts[i] += 1;
            }
            if d == c.theoretical {
                match_theory += 1;
            }
            if let Some(a) = c.archetype {
                if d == a.expected_expertise() {
                    planted_hits[i] += 1;
                }
            }
        }
        tbc_vs_theoretical[i] = percent(match_theory, n);
    }
    #[allow(clippy::needless_range_loop)]
    for i in 0..4 {
        for j in (i + 1)..4 {
            let same = rows
                .iter()
                .filter(|(_, s)| s.decisions[i] == s.decisions[j])
                .count();
            let pct = percent(same, n);
            agreement[i][j] = pct;
            agreement[j][i] = pct;
        }
    }
    let tbc_vs_planted = if planted_total > 0 {
        Some(std::array::from_fn(|i| {
            percent(planted_hits[i], planted_total)
        }))
    } else {
        None
    };
    RunSummary {
        run,
        n_contributors: n,
        tbc_vs_theoretical,
        tbc_vs_planted,
        expert_counts,
        agreement,
    }
}

/// Runs the whole protocol: theoretical labels from ground-truth questions,
/// profiles built twice (ground-truth questions only, test questions only),
/// global-degree baselines on each run, per-run summaries, cross-run
/// agreement, and majority votes over the full dataset.
pub fn evaluate(
    answers: &[ContributorAnswer],
    specs: &QuestionMap,
    planted: Option<&BTreeMap<String, Archetype>>,
    opts: &EvalOptions,
) -> Result<EvaluationReport> {
    let gt_profiles = build_profiles(
        answers,
        specs,
        &opts.profile_config(QuestionFilter::GroundTruthOnly),
    )?;
    let test_profiles = build_profiles(
        answers,
        specs,
        &opts.profile_config(QuestionFilter::TestOnly),
    )?;

    let by_id = |profiles: &[ContributorProfile]| -> BTreeMap<String, ContributorProfile> {
        profiles
            .iter()
            .map(|p| (p.contributor_id.clone(), p.clone()))
            .collect()
    };
    let gt_map = by_id(&gt_profiles);
    let test_map = by_id(&test_profiles);
    for id in gt_map.keys() {
        if !test_map.contains_key(id) {
            return Err(ExperimentError::MissingFromRun {
                contributor: id.clone(),
                run: "test",
            });
        }
    }
    for id in test_map.keys() {
        if !gt_map.contains_key(id) {
            return Err(ExperimentError::MissingFromRun {
                contributor: id.clone(),
                run: "ground-truth",
            });
        }
    }

    let mut contributors = Vec::with_capacity(gt_map.len());
    for (id, gt_profile) in &gt_map {
        let test_profile = &test_map[id];
        let label = theoretical_label(id, answers, specs, &opts.alphas, opts.sigma)?;
        let gt_dg = global_degree(gt_profile.de, gt_profile.dp, opts.beta)
            .map_err(ExperimentError::Profile)?;
        let test_dg = global_degree(test_profile.de, test_profile.dp, opts.beta)
            .map_err(ExperimentError::Profile)?;
        contributors.push(ContributorEvaluation {
            contributor_id: id.clone(),
            archetype: planted.and_then(|p| p.get(id).copied()),
            tbc: label.tbc,
            theoretical: label.expertise,
            ground_truth: EstimatorScores::new(gt_profile, gt_dg, opts.sigma),
            test: EstimatorScores::new(test_profile, test_dg, opts.sigma),
        });
    }

    let gt_rows: Vec<(&ContributorEvaluation, &EstimatorScores)> =
        contributors.iter().map(|c| (c, &c.ground_truth)).collect();
    let test_rows: Vec<(&ContributorEvaluation, &EstimatorScores)> =
        contributors.iter().map(|c| (c, &c.test)).collect();
    let ground_truth_run = summarize("ground-truth", &gt_rows);
    let test_run = summarize("test", &test_rows);

    let n = contributors.len();
    let cross_run_agreement = std::array::from_fn(|i| {
        percent(
            contributors
                .iter()
                .filter(|c| c.ground_truth.decisions[i] == c.test.decisions[i])
                .count(),
            n,
        )
    });

    let majority = majority_votes(answers)
        .into_iter()
        .map(|(q, mask)| {
            let rendered = render_answer(&specs[&q].frame, mask);
            (q, rendered)
        })
        .collect();

    Ok(EvaluationReport {
        sigma: opts.sigma,
        beta: opts.beta,
        contributors,
        ground_truth_run,
        test_run,
        cross_run_agreement,
        majority,
    })
}
