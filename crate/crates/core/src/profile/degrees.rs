use std::collections::{BTreeMap, BTreeSet};

use crate::belief::{Frame, MassFunction, SubsetMask};

use super::{
    mask_first, mask_second, qualification_frame, AlphaTable, ContributorAnswer, ProfileError,
    QuestionMap, QuestionSpec, Result,
};

/// Simple-support mass for one answer: the stated subset carries the
/// certainty weight, the rest of the belief stays on the whole frame.
pub fn answer_mass(
    answer: &ContributorAnswer,
    spec: &QuestionSpec,
    alphas: &AlphaTable,
) -> Result<MassFunction> {
    let invalid = |reason: &str| ProfileError::InvalidAnswer {
        contributor: answer.contributor_id.clone(),
        question: answer.question_id.clone(),
        reason: reason.to_string(),
    };
    spec.frame
        .check_mask(answer.answer)
        .map_err(|e| invalid(&e.to_string()))?;
    if answer.answer.is_empty() {
        return Err(invalid("empty answer"));
    }
    if answer.answer == spec.frame.full_mask() {
        return Err(invalid("answer covers the whole frame"));
    }
    let alpha = alphas.alpha(answer.certainty);
    Ok(MassFunction::simple_support(
        spec.frame.clone(),
        answer.answer,
        alpha,
    )?)
}

struct QuestionAnswers {
    frame: Frame,
    /// Contributor id -> that contributor's answer mass on this question.
    masses: BTreeMap<String, MassFunction>,
    /// Focal-wise sum over all answer masses, kept current on insert so a
    /// peer average is one subtraction away.
    sums: BTreeMap<SubsetMask, f64>,
}

impl QuestionAnswers {
    fn new(frame: Frame) -> Self {
        QuestionAnswers {
            frame,
            masses: BTreeMap::new(),
            sums: BTreeMap::new(),
        }
    }

    fn insert(&mut self, contributor: &str, mass: MassFunction) {
        for (mask, value) in mass.focals() {
            *self.sums.entry(mask).or_insert(0.0) += value;
        }
        self.masses.insert(contributor.to_string(), mass);
    }

    /// Average of every answer mass except `c`'s; none when `c` is alone.
    fn peer_average(&self, c: &str) -> Option<MassFunction> {
        let k = self.masses.len();
        if k < 2 || !self.masses.contains_key(c) {
            return None;
        }
        let own = &self.masses[c];
        let scale = 1.0 / (k - 1) as f64;
        let raw: BTreeMap<SubsetMask, f64> = self
            .sums
            .iter()
            .map(|(&mask, &sum)| (mask, (sum - own.mass(mask)) * scale))
            .collect();
        Some(MassFunction::from_operation(self.frame.clone(), raw))
    }
}

/// Answer masses grouped per question, the shape the two degrees read from.
#[derive(Default)]
pub struct AnswerTable {
    by_question: BTreeMap<String, QuestionAnswers>,
}

impl AnswerTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Converts a raw answer log. Every answer must have a question spec and
    /// a (contributor, question) pair may appear once.
    pub fn from_answers(
        answers: &[ContributorAnswer],
        specs: &QuestionMap,
        alphas: &AlphaTable,
    ) -> Result<Self> {
        let mut table = AnswerTable::new();
        for a in answers {
            let spec = specs
                .get(&a.question_id)
                .ok_or_else(|| ProfileError::UnknownQuestion(a.question_id.clone()))?;
            let mass = answer_mass(a, spec, alphas)?;
            table.insert(&a.question_id, &a.contributor_id, mass)?;
        }
        Ok(table)
    }

    /// Adds one answer mass. The first mass on a question settles the
    /// question's frame; later ones must share it.
    pub fn insert(&mut self, question: &str, contributor: &str, mass: MassFunction) -> Result<()> {
        let entry = self
            .by_question
            .entry(question.to_string())
            .or_insert_with(|| QuestionAnswers::new(mass.frame().clone()));
        if entry.frame != *mass.frame() {
            return Err(ProfileError::Belief(
                crate::belief::BeliefError::FrameMismatch,
            ));
        }
        if entry.masses.contains_key(contributor) {
            return Err(ProfileError::DuplicateAnswer {
                contributor: contributor.to_string(),
                question: question.to_string(),
            });
        }
        entry.insert(contributor, mass);
        Ok(())
    }

    /// Every contributor appearing in the table, sorted.
    pub fn contributor_ids(&self) -> BTreeSet<String> {
        self.by_question
            .values()
            .flat_map(|q| q.masses.keys().cloned())
            .collect()
    }

    pub fn question_count(&self) -> usize {
        self.by_question.len()
    }

    /// Degree of exactness: one minus the mean Jousselme distance between
    /// the contributor's answer mass and the peer average, over the
    /// questions they answered. A question where the contributor is the
    /// only responder is skipped with a warning; if no question has peers
    /// the degree is undefined.
    pub fn degree_exactness(&self, c: &str) -> Result<f64> {
        let mut answered = 0usize;
        let mut used = 0usize;
        let mut total = 0.0;
        for (qid, qa) in &self.by_question {
            let Some(own) = qa.masses.get(c) else {
                continue;
            };
            answered += 1;
            match qa.peer_average(c) {
                Some(avg) => {
                    total += own.jousselme_distance(&avg)?;
                    used += 1;
                }
                None => {
                    log::warn!(
                        "question {qid:?}: contributor {c:?} has no peers, skipped in exactness"
                    );
                }
            }
        }
        if answered == 0 {
            return Err(ProfileError::UnknownContributor(c.to_string()));
        }
        if used == 0 {
            return Err(ProfileError::InsufficientPeers {
                contributor: c.to_string(),
            });
        }
        Ok(1.0 - total / used as f64)
    }

    /// Degree of precision: mean specificity of the contributor's answer
    /// masses over the questions they answered.
    pub fn degree_precision(&self, c: &str) -> Result<f64> {
        let mut count = 0usize;
        let mut total = 0.0;
        for qa in self.by_question.values() {
            if let Some(own) = qa.masses.get(c) {
                total += own.specificity()?;
                count += 1;
            }
        }
        if count == 0 {
            return Err(ProfileError::UnknownContributor(c.to_string()));
        }
        Ok(total / count as f64)
    }
}

/// Knowledge mass on Ω2: exactness splits the precise share between
/// qualified and not, imprecision stays ignorant.
pub fn qualification_mass(de: f64, dp: f64) -> Result<MassFunction> {
    for (name, v) in [("de", de), ("dp", dp)] {
        if !v.is_finite() || !(0.0..=1.0).contains(&v) {
            return Err(ProfileError::OutOfRange {
                name,
                value: v,
                range: "[0,1]",
            });
        }
    }
    let frame = qualification_frame();
    let full = frame.full_mask();
    Ok(MassFunction::from_masses(
        frame,
        [
            (mask_first(), dp * de),
            (mask_second(), dp * (1.0 - de)),
            (full, 1.0 - dp),
        ],
    )?)
}
