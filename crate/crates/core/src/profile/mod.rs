//! Per-contributor evidence built from an answer log.
//!
//! Each answer becomes a simple-support mass on the question's frame,
//! weighted by the contributor's stated certainty. From those masses two
//! degrees are read off: exactness (peer agreement, one minus the mean
//! Jousselme distance to the per-question peer average) and precision (mean
//! specificity). Exactness and precision feed a qualification mass on
//! Ω2 = {Q,NQ}; response times feed a reflection mass on Ω3 = {R,NR};
//! Yager fusion of their vacuous extensions yields the expertise mass on
//! Ω4 = Ω2×Ω3, whose marginal pignistic probability of Q drives the
//! Expert / Non-Expert decision.

mod builder;
mod degrees;
mod expertise;
mod reflection;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::belief::{BeliefError, Frame, MassFunction, ProductFrame, SubsetMask};

pub use builder::{build_profiles, ProfileConfig, QuestionFilter};
pub use degrees::{answer_mass, qualification_mass, AnswerTable};
pub use expertise::{classify, expertise_mass};
pub use reflection::{reflection_mass, reflection_mass_from_times, reflection_mass_g, AlphaFn};

/// Question specs keyed by question id.
pub type QuestionMap = BTreeMap<String, QuestionSpec>;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error(transparent)]
    Belief(#[from] BeliefError),

    #[error("unknown contributor {0:?}")]
    UnknownContributor(String),

    /// Exactness needs at least one answered question with a peer answer.
    #[error("contributor {contributor:?} has no question with peer answers")]
    InsufficientPeers { contributor: String },

    /// Reflection needs at least one answered question with a theoretical time.
    #[error("contributor {contributor:?} answered no question with a theoretical time")]
    MissingTheoreticalTime { contributor: String },

    #[error("invalid answer from {contributor:?} to {question:?}: {reason}")]
    InvalidAnswer {
        contributor: String,
        question: String,
        reason: String,
    },

    #[error("duplicate answer from {contributor:?} to {question:?}")]
    DuplicateAnswer {
        contributor: String,
        question: String,
    },

    #[error("no spec for question {0:?}")]
    UnknownQuestion(String),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("no answers")]
    EmptyDataset,

    #[error("no questions match the {0:?} filter")]
    EmptyFilter(QuestionFilter),
}

pub type Result<T> = std::result::Result<T, ProfileError>;

/// The two contributor profiles a crowd is sorted into.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Expertise {
    Expert,
    NonExpert,
}

impl Expertise {
    pub fn as_str(self) -> &'static str {
        match self {
            Expertise::Expert => "expert",
            Expertise::NonExpert => "non-expert",
        }
    }

    /// Thresholding rule shared by every estimator: Expert above `sigma`,
    /// strictly.
    pub fn from_score(score: f64, sigma: f64) -> Self {
        if score > sigma {
            Expertise::Expert
        } else {
            Expertise::NonExpert
        }
    }
}

/// Self-reported certainty attached to one answer, lowest to highest.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum CertaintyLevel {
    N1,
    N2,
    N3,
    N4,
    N5,
}

impl CertaintyLevel {
    pub const ALL: [CertaintyLevel; 5] = [
        CertaintyLevel::N1,
        CertaintyLevel::N2,
        CertaintyLevel::N3,
        CertaintyLevel::N4,
        CertaintyLevel::N5,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn token(self) -> &'static str {
        match self {
            CertaintyLevel::N1 => "N1",
            CertaintyLevel::N2 => "N2",
            CertaintyLevel::N3 => "N3",
            CertaintyLevel::N4 => "N4",
            CertaintyLevel::N5 => "N5",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|l| l.token() == token)
    }
}

/// Mass weight put on the stated answer at each certainty level. The weight
/// stays strictly inside (0,1): even a "sure" answer keeps a sliver of
/// ignorance and even an unsure one carries some support.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct AlphaTable {
    alphas: [f64; 5],
}

impl Default for AlphaTable {
    fn default() -> Self {
        AlphaTable {
            alphas: [0.01, 0.25, 0.5, 0.75, 0.99],
        }
    }
}

impl AlphaTable {
    /// Builds a table from N1..N5 weights, each strictly in (0,1).
    pub fn new(alphas: [f64; 5]) -> Result<Self> {
        for &a in &alphas {
            if !a.is_finite() || a <= 0.0 || a >= 1.0 {
                return Err(ProfileError::OutOfRange {
                    name: "alpha",
                    value: a,
                    range: "(0,1)",
                });
            }
        }
        Ok(AlphaTable { alphas })
    }

    pub fn alpha(&self, level: CertaintyLevel) -> f64 {
        self.alphas[level.index()]
    }
}

/// One (contributor, question) record from the answer log.
#[derive(Clone, PartialEq, Debug)]
pub struct ContributorAnswer {
    pub contributor_id: String,
    pub question_id: String,
    /// The stated answer: a non-empty proper subset of the question frame.
    pub answer: SubsetMask,
    pub certainty: CertaintyLevel,
    pub response_time_s: f64,
}

/// Static description of one question: answer frame, theoretical response
/// time, and the expected answer when the question has a known ground
/// truth. Having an expected answer is what being a ground-truth question
/// means, so the two cannot disagree.
#[derive(Clone, PartialEq, Debug)]
pub struct QuestionSpec {
    pub question_id: String,
    pub frame: Frame,
    pub theoretical_time_s: f64,
    pub expected_answer: Option<SubsetMask>,
}

impl QuestionSpec {
    pub fn is_ground_truth(&self) -> bool {
        self.expected_answer.is_some()
    }
}

/// Frame Ω2 = {Q, NQ}: qualified or not.
pub fn qualification_frame() -> Frame {
    Frame::new(["Q", "NQ"]).expect("static frame")
}

/// Frame Ω3 = {R, NR}: reflected or instinctive responding.
pub fn reflection_frame() -> Frame {
    Frame::new(["R", "NR"]).expect("static frame")
}

/// Ω4 = Ω2 × Ω3, the joint qualification/reflection frame.
pub fn expertise_frame() -> ProductFrame {
    ProductFrame::new(qualification_frame(), reflection_frame()).expect("static product")
}

pub(crate) fn mask_first() -> SubsetMask {
    SubsetMask::singleton(0)
}

pub(crate) fn mask_second() -> SubsetMask {
    SubsetMask::singleton(1)
}

/// Everything the pipeline derives for one contributor.
#[derive(Clone, Debug)]
pub struct ContributorProfile {
    pub contributor_id: String,
    /// Degree of exactness: peer agreement in [0,1].
    pub de: f64,
    /// Degree of precision: mean answer specificity in [0,1].
    pub dp: f64,
    /// Knowledge mass on Ω2 built from de and dp.
    pub qualification: MassFunction,
    /// Behavior mass on Ω3 built from response times.
    pub reflection: MassFunction,
    /// Yager fusion of the two on Ω4.
    pub expertise: MassFunction,
    /// betP(Q) read directly off the qualification mass.
    pub betp_qualification: f64,
    /// betP(R) read directly off the reflection mass.
    pub betp_reflection: f64,
    /// betP(Q) of the expertise mass marginalized back onto Ω2.
    pub betp_qualified: f64,
    /// Expert iff betp_qualified clears the sigma threshold.
    pub decision: Expertise,
}
