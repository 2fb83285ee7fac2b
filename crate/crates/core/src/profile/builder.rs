use std::fmt;

use super::{
    classify, expertise_mass, qualification_mass, reflection_mass_from_times, AlphaFn, AlphaTable,
    AnswerTable, ContributorAnswer, ContributorProfile, ProfileError, QuestionMap, Result,
};

/// Which questions take part in profile construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum QuestionFilter {
    #[default]
    All,
    GroundTruthOnly,
    TestOnly,
}

impl QuestionFilter {
    pub const ALL: [QuestionFilter; 3] = [
        QuestionFilter::All,
        QuestionFilter::GroundTruthOnly,
        QuestionFilter::TestOnly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QuestionFilter::All => "all",
            QuestionFilter::GroundTruthOnly => "ground-truth-only",
            QuestionFilter::TestOnly => "test-only",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.name() == name)
    }

    fn admits(self, is_ground_truth: bool) -> bool {
        match self {
            QuestionFilter::All => true,
            QuestionFilter::GroundTruthOnly => is_ground_truth,
            QuestionFilter::TestOnly => !is_ground_truth,
        }
    }
}

impl fmt::Display for QuestionFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Knobs for profile construction.
#[derive(Clone, Debug)]
pub struct ProfileConfig {
    pub alphas: AlphaTable,
    /// Expert threshold on the marginal pignistic probability.
    pub sigma: f64,
    /// Residual weight put on the opposite reflection label.
    pub cte: f64,
    pub alpha_fn: AlphaFn,
    pub filter: QuestionFilter,
    /// When set, observed times are capped at this multiple of the
    /// theoretical time before the reflection mass is built. Off by
    /// default: times are taken as logged.
    pub time_cap_factor: Option<f64>,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        ProfileConfig {
            alphas: AlphaTable::default(),
            sigma: 0.5,
            cte: 0.05,
            alpha_fn: AlphaFn::default(),
            filter: QuestionFilter::All,
            time_cap_factor: None,
        }
    }
}

/// Runs the whole pipeline: answer masses, degrees, qualification,
/// reflection, fusion, decision. One profile per contributor, sorted by
/// contributor id; deterministic for fixed inputs and config.
pub fn build_profiles(
    answers: &[ContributorAnswer],
    specs: &QuestionMap,
    config: &ProfileConfig,
) -> Result<Vec<ContributorProfile>> {
    if answers.is_empty() {
        return Err(ProfileError::EmptyDataset);
    }
    if let Some(cap) = config.time_cap_factor {
        if !cap.is_finite() || cap <= 0.0 {
            return Err(ProfileError::OutOfRange {
                name: "time_cap_factor",
                value: cap,
                range: "(0,inf)",
            });
        }
    }

    // Resolve specs up front so an unknown question fails before any math.
    let mut kept: Vec<(&ContributorAnswer, f64)> = Vec::new();
    for a in answers {
        let spec = specs
            .get(&a.question_id)
            .ok_or_else(|| ProfileError::UnknownQuestion(a.question_id.clone()))?;
        if !a.response_time_s.is_finite() || a.response_time_s <= 0.0 {
            return Err(ProfileError::InvalidAnswer {
                contributor: a.contributor_id.clone(),
                question: a.question_id.clone(),
                reason: format!("non-positive response time {}", a.response_time_s),
            });
        }
        if config.filter.admits(spec.is_ground_truth()) {
            let mut t_c = a.response_time_s;
            if let Some(cap) = config.time_cap_factor {
                t_c = t_c.min(cap * spec.theoretical_time_s);
            }
            kept.push((a, t_c));
        }
    }
    if kept.is_empty() {
        return Err(ProfileError::EmptyFilter(config.filter));
    }

    let filtered: Vec<ContributorAnswer> = kept.iter().map(|(a, _)| (*a).clone()).collect();
    let table = AnswerTable::from_answers(&filtered, specs, &config.alphas)?;

    let mut profiles = Vec::new();
    for c in table.contributor_ids() {
        let de = table.degree_exactness(&c)?;
        let dp = table.degree_precision(&c)?;
        let qualification = qualification_mass(de, dp)?;

        let times: Vec<(f64, f64)> = kept
            .iter()
            .filter(|(a, _)| a.contributor_id == c)
            .map(|(a, t_c)| (*t_c, specs[&a.question_id].theoretical_time_s))
            .collect();
        let reflection = reflection_mass_from_times(&times, config.cte, config.alpha_fn).map_err(
            |e| match e {
                ProfileError::MissingTheoreticalTime { .. } => {
                    ProfileError::MissingTheoreticalTime {
                        contributor: c.clone(),
                    }
                }
                other => other,
            },
        )?;

        let expertise = expertise_mass(&qualification, &reflection)?;
        let (decision, betp_qualified) = classify(&expertise, config.sigma)?;
        let betp_qualification = qualification.pignistic()?[0];
        let betp_reflection = reflection.pignistic()?[0];

        profiles.push(ContributorProfile {
            contributor_id: c,
            de,
            dp,
            qualification,
            reflection,
            expertise,
            betp_qualification,
            betp_reflection,
            betp_qualified,
            decision,
        });
    }
    Ok(profiles)
}
