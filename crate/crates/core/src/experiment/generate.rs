use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::belief::SubsetMask;
use crate::profile::{CertaintyLevel, ContributorAnswer, QuestionMap, QuestionSpec};

use super::{Archetype, ExperimentError, Result};
use crate::belief::Frame;

/// Noise model for one archetype. The serde shape doubles as the config
/// file's archetype table, so unknown keys are rejected there.
#[derive(Clone, PartialEq, Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArchetypeParams {
    /// Gaussian spread, in grade units, around a question's latent value.
    pub answer_noise_sd: f64,
    /// Probability of widening a grade to two consecutive grades.
    pub imprecise_prob: f64,
    /// When set, answers ignore the latent value entirely and are drawn
    /// uniformly over the grades.
    pub uniform_answers: bool,
    /// Sampling weights over certainty levels N1..N5.
    pub certainty_weights: [f64; 5],
    /// Response time as a uniform multiple of the question's theoretical
    /// time, inclusive bounds.
    pub time_factor: (f64, f64),
}

impl ArchetypeParams {
    /// Careful, competent contributor: answers hug the latent value with
    /// high stated certainty, and reading plus deliberation keeps response
    /// times above the theoretical time.
    pub fn expert() -> Self {
        ArchetypeParams {
            answer_noise_sd: 0.25,
            imprecise_prob: 0.10,
            uniform_answers: false,
            certainty_weights: [0.0, 0.0, 0.05, 0.25, 0.70],
            time_factor: (1.2, 2.2),
        }
    }

    /// Honest but unskilled: wide answer noise, middling certainty, times
    /// around the theoretical value.
    pub fn unqualified() -> Self {
        ArchetypeParams {
            answer_noise_sd: 1.25,
            imprecise_prob: 0.25,
            uniform_answers: false,
            certainty_weights: [0.10, 0.25, 0.40, 0.20, 0.05],
            time_factor: (0.8, 1.4),
        }
    }

    /// Clicks through: uniform answers, arbitrary certainty, short times.
    pub fn spammer() -> Self {
        ArchetypeParams {
            answer_noise_sd: 0.0,
            imprecise_prob: 0.15,
            uniform_answers: true,
            certainty_weights: [0.2, 0.2, 0.2, 0.2, 0.2],
            time_factor: (0.1, 0.8),
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        let bad = |msg: String| Err(ExperimentError::InvalidScenario(msg));
        if !self.answer_noise_sd.is_finite() || self.answer_noise_sd < 0.0 {
            return bad(format!("{name}: answer_noise_sd must be >= 0"));
        }
        if !self.imprecise_prob.is_finite() || !(0.0..=1.0).contains(&self.imprecise_prob) {
            return bad(format!("{name}: imprecise_prob must be in [0,1]"));
        }
        if self
            .certainty_weights
            .iter()
            .any(|w| !w.is_finite() || *w < 0.0)
        {
            return bad(format!("{name}: certainty weights must be >= 0"));
        }
        if self.certainty_weights.iter().sum::<f64>() <= 0.0 {
            return bad(format!("{name}: certainty weights sum to zero"));
        }
        let (lo, hi) = self.time_factor;
        if !lo.is_finite() || !hi.is_finite() || lo <= 0.0 || hi < lo {
            return bad(format!("{name}: time_factor must satisfy 0 < lo <= hi"));
        }
        Ok(())
    }
}

/// Shape and noise description of one synthetic campaign. The default
/// mirrors the reference layout: 93 contributors over 4 HITs of 12
/// five-grade questions each, the first 5 of every HIT carrying a known
/// expected answer, with a 60/40 expert/spammer crowd.
#[derive(Clone, PartialEq, Debug)]
pub struct CrowdScenario {
    pub n_contributors: usize,
    pub n_hits: usize,
    pub questions_per_hit: usize,
    pub ground_truth_per_hit: usize,
    pub frame_size: usize,
    pub expert_share: f64,
    pub unqualified_share: f64,
    pub spammer_share: f64,
    pub expert: ArchetypeParams,
    pub unqualified: ArchetypeParams,
    pub spammer: ArchetypeParams,
    pub seed: u64,
}

impl Default for CrowdScenario {
    fn default() -> Self {
        CrowdScenario {
            n_contributors: 93,
            n_hits: 4,
            questions_per_hit: 12,
            ground_truth_per_hit: 5,
            frame_size: 5,
            expert_share: 0.6,
            unqualified_share: 0.0,
            spammer_share: 0.4,
            expert: ArchetypeParams::expert(),
            unqualified: ArchetypeParams::unqualified(),
            spammer: ArchetypeParams::spammer(),
            seed: 42,
        }
    }
}

impl CrowdScenario {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(ExperimentError::InvalidScenario(msg.to_string()));
        if self.n_contributors == 0 {
            return bad("n_contributors must be positive");
        }
        if self.n_hits == 0 || self.questions_per_hit == 0 {
            return bad("n_hits and questions_per_hit must be positive");
        }
        if self.ground_truth_per_hit > self.questions_per_hit {
            return bad("ground_truth_per_hit exceeds questions_per_hit");
        }
        if !(2..=16).contains(&self.frame_size) {
            return bad("frame_size must be in 2..=16");
        }
        let shares = [
            self.expert_share,
            self.unqualified_share,
            self.spammer_share,
        ];
        if shares.iter().any(|s| !s.is_finite() || *s < 0.0) {
            return bad("archetype shares must be >= 0");
        }
        let total: f64 = shares.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(ExperimentError::InvalidScenario(format!(
                "archetype shares sum to {total}, expected 1"
            )));
        }
        for (archetype, params, share) in [
            (Archetype::Expert, &self.expert, self.expert_share),
            (
                Archetype::Unqualified,
                &self.unqualified,
                self.unqualified_share,
            ),
            (Archetype::Spammer, &self.spammer, self.spammer_share),
        ] {
            if share > 0.0 {
                params.validate(archetype.as_str())?;
            }
        }
        Ok(())
    }

    fn params(&self, archetype: Archetype) -> &ArchetypeParams {
        match archetype {
            Archetype::Expert => &self.expert,
            Archetype::Unqualified => &self.unqualified,
            Archetype::Spammer => &self.spammer,
        }
    }

    /// Archetype per contributor index: cumulative rounding keeps the counts
    /// within one of the exact proportions and the total exact.
    fn assignments(&self) -> Vec<Archetype> {
        let n = self.n_contributors;
        let experts = (self.expert_share * n as f64).round() as usize;
        let experts = experts.min(n);
        let through_unqualified =
            ((self.expert_share + self.unqualified_share) * n as f64).round() as usize;
        let through_unqualified = through_unqualified.clamp(experts, n);
        (0..n)
            .map(|i| {
                if i < experts {
                    Archetype::Expert
                } else if i < through_unqualified {
                    Archetype::Unqualified
                } else {
                    Archetype::Spammer
                }
            })
            .collect()
    }
}

/// A generated campaign: the full answer log, the question specs, and which
/// archetype each contributor was drawn from.
#[derive(Clone, PartialEq, Debug)]
pub struct GeneratedCrowd {
    pub answers: Vec<ContributorAnswer>,
    pub questions: QuestionMap,
    pub planted: BTreeMap<String, Archetype>,
}

/// Latent grade values for one HIT. Ground-truth questions spread evenly
/// over the full 1..n grade range; test questions cycle a half-grade grid,
/// so their true values sit between grades and are harder to call.
fn latents(frame_size: usize, ground_truth: usize, questions: usize) -> Vec<(bool, f64)> {
    let n = frame_size as f64;
    let mut out = Vec::with_capacity(questions);
    for k in 0..ground_truth {
        let latent = if ground_truth == 1 {
            (1.0 + n) / 2.0
        } else {
            1.0 + k as f64 * (n - 1.0) / (ground_truth - 1) as f64
        };
        out.push((true, latent));
    }
    let mut grid = Vec::new();
    let mut v = 1.5;
    while v <= n - 0.5 + 1e-9 {
        grid.push(v);
        v += 0.5;
    }
    for k in 0..questions - ground_truth {
        out.push((false, grid[k % grid.len()]));
    }
    out
}

fn sample_certainty(weights: &[f64; 5], rng: &mut ChaCha8Rng) -> CertaintyLevel {
    let total: f64 = weights.iter().sum();
    let mut draw = rng.random::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        draw -= w;
        if draw < 0.0 {
            return CertaintyLevel::ALL[i];
        }
    }
    CertaintyLevel::N5
}

/// Deterministically generates a synthetic crowd: same scenario and seed,
/// same dataset, byte for byte.
pub fn generate_crowd(scenario: &CrowdScenario) -> Result<GeneratedCrowd> {
    scenario.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    let frame = Frame::grades(scenario.frame_size).map_err(crate::profile::ProfileError::from)?;
    let n = scenario.frame_size;

    // Questions first: ids sort by (hit, index), theoretical times are the
    // per-question clip-duration analog.
    let mut questions: QuestionMap = BTreeMap::new();
    let mut order = Vec::new();
    for hit in 1..=scenario.n_hits {
        let plan = latents(n, scenario.ground_truth_per_hit, scenario.questions_per_hit);
        for (k, (is_gt, latent)) in plan.into_iter().enumerate() {
            let id = format!("h{hit:02}q{:02}", k + 1);
            let t_th = rng.random_range(8.0..=15.0);
            let expected = if is_gt {
                let grade = (latent.round() as usize).clamp(1, n);
                Some(SubsetMask::singleton(grade - 1))
            } else {
                None
            };
            questions.insert(
                id.clone(),
                QuestionSpec {
                    question_id: id.clone(),
                    frame: frame.clone(),
                    theoretical_time_s: t_th,
                    expected_answer: expected,
                },
            );
            order.push((id, latent));
        }
    }

    let width = scenario.n_contributors.to_string().len();
    let assignments = scenario.assignments();
    let mut planted = BTreeMap::new();
    let mut answers = Vec::with_capacity(scenario.n_contributors * order.len());
    for (i, &archetype) in assignments.iter().enumerate() {
        let contributor_id = format!("c{:0width$}", i + 1);
        planted.insert(contributor_id.clone(), archetype);
        let params = scenario.params(archetype);
        for (question_id, latent) in &order {
            let spec = &questions[question_id];
            let grade = if params.uniform_answers {
                rng.random_range(1..=n)
            } else {
                let noise: f64 = rng.sample(StandardNormal);
                let v = latent + params.answer_noise_sd * noise;
                (v.round() as i64).clamp(1, n as i64) as usize
            };
            // Widening to a grade pair needs the pair to stay a proper
            // subset, so two-grade frames keep precise answers.
            let answer = if n >= 3 && rng.random::<f64>() < params.imprecise_prob {
                let low = if grade == n { grade - 1 } else { grade };
                SubsetMask::singleton(low - 1).union(SubsetMask::singleton(low))
            } else {
                SubsetMask::singleton(grade - 1)
            };
            let certainty = sample_certainty(&params.certainty_weights, &mut rng);
            let (lo, hi) = params.time_factor;
            let response_time_s = spec.theoretical_time_s * rng.random_range(lo..=hi);
            answers.push(ContributorAnswer {
                contributor_id: contributor_id.clone(),
                question_id: question_id.clone(),
                answer,
                certainty,
                response_time_s,
            });
        }
    }

    Ok(GeneratedCrowd {
        answers,
        questions,
        planted,
    })
}
