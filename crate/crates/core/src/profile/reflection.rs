use crate::belief::{average_masses, BeliefError, MassFunction, SubsetMask};

use super::{
    mask_first, mask_second, reflection_frame, ContributorAnswer, ProfileError, QuestionMap, Result,
};

/// Strategy for the time-confidence helper: how strongly an observed
/// response time speaks for its reflection label.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum AlphaFn {
    /// Relative deviation from the theoretical time, `min(|t_c - t_th| /
    /// t_th, 1)`, scaled by `1 - cte` so the mass triple stays normalized.
    /// Scale-free per question and zero at `t_c = t_th`, where the timing
    /// signal says nothing.
    #[default]
    RelativeDeviation,
}

impl AlphaFn {
    pub const ALL: [AlphaFn; 1] = [AlphaFn::RelativeDeviation];

    pub fn name(self) -> &'static str {
        match self {
            AlphaFn::RelativeDeviation => "relative-deviation",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.name() == name)
    }

    /// Confidence put on the timing label, already clamped to `[0, 1-cte]`.
    pub fn alpha(self, t_c: f64, t_th: f64, cte: f64) -> f64 {
        match self {
            AlphaFn::RelativeDeviation => ((t_c - t_th).abs() / t_th).min(1.0) * (1.0 - cte),
        }
    }
}

fn check_time(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(ProfileError::OutOfRange {
            name,
            value,
            range: "(0,inf)",
        });
    }
    Ok(())
}

fn check_cte(cte: f64) -> Result<()> {
    if !cte.is_finite() || !(0.0..0.5).contains(&cte) {
        return Err(ProfileError::OutOfRange {
            name: "cte",
            value: cte,
            range: "[0,0.5)",
        });
    }
    Ok(())
}

/// Timing evidence for one question as a function over the three usable
/// focal sets of Ω3. Answers slower than the theoretical time count as
/// reflected, equal-or-faster as instinctive (the comparison is strict);
/// the deviation confidence goes to that label, a constant residue to the
/// opposite one, and what is left to ignorance. The three values sum to 1.
pub fn reflection_mass_g(
    t_c: f64,
    t_th: f64,
    x: SubsetMask,
    cte: f64,
    alpha_fn: AlphaFn,
) -> Result<f64> {
    check_time("t_c", t_c)?;
    check_time("t_th", t_th)?;
    check_cte(cte)?;
    let frame = reflection_frame();
    frame.check_mask(x)?;
    if x.is_empty() {
        return Err(ProfileError::Belief(BeliefError::InvalidFocal(
            "reflection mass of the empty set".into(),
        )));
    }
    let label = if t_c > t_th {
        mask_first()
    } else {
        mask_second()
    };
    let alpha3 = alpha_fn.alpha(t_c, t_th, cte).min(1.0 - cte);
    Ok(if x == label {
        alpha3
    } else if x == frame.full_mask() {
        1.0 - cte - alpha3
    } else {
        cte
    })
}

/// Per-question reflection mass from one (observed, theoretical) time pair.
fn single_reflection_mass(
    t_c: f64,
    t_th: f64,
    cte: f64,
    alpha_fn: AlphaFn,
) -> Result<MassFunction> {
    let frame = reflection_frame();
    let full = frame.full_mask();
    let pairs = [
        (
            mask_first(),
            reflection_mass_g(t_c, t_th, mask_first(), cte, alpha_fn)?,
        ),
        (
            mask_second(),
            reflection_mass_g(t_c, t_th, mask_second(), cte, alpha_fn)?,
        ),
        (full, reflection_mass_g(t_c, t_th, full, cte, alpha_fn)?),
    ];
    Ok(MassFunction::from_masses(frame, pairs)?)
}

/// Behavior mass on Ω3 from a list of (observed, theoretical) time pairs:
/// the arithmetic mean of the per-question masses. Averaging is used
/// deliberately instead of a combination rule, so one hurried answer
/// cannot dominate the whole profile.
pub fn reflection_mass_from_times(
    times: &[(f64, f64)],
    cte: f64,
    alpha_fn: AlphaFn,
) -> Result<MassFunction> {
    if times.is_empty() {
        return Err(ProfileError::MissingTheoreticalTime {
            contributor: String::new(),
        });
    }
    let per_question = times
        .iter()
        .map(|&(t_c, t_th)| single_reflection_mass(t_c, t_th, cte, alpha_fn))
        .collect::<Result<Vec<_>>>()?;
    Ok(average_masses(&per_question)?)
}

/// Behavior mass for one contributor, pairing each of their answers with
/// its question's theoretical time.
pub fn reflection_mass(
    contributor: &str,
    answers: &[ContributorAnswer],
    specs: &QuestionMap,
    cte: f64,
    alpha_fn: AlphaFn,
) -> Result<MassFunction> {
    let times: Vec<(f64, f64)> = answers
        .iter()
        .filter(|a| a.contributor_id == contributor)
        .filter_map(|a| {
            specs
                .get(&a.question_id)
                .map(|s| (a.response_time_s, s.theoretical_time_s))
        })
        .collect();
    if times.is_empty() {
        return Err(ProfileError::MissingTheoreticalTime {
            contributor: contributor.to_string(),
        });
    }
    reflection_mass_from_times(&times, cte, alpha_fn)
}
