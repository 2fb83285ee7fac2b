use crate::belief::{combine_yager, marginalize, vacuous_extension, MassFunction, Side};

use super::{
    expertise_frame, qualification_frame, reflection_frame, Expertise, ProfileError, Result,
};

/// Fuses the knowledge and behavior masses on Ω4: both are vacuously
/// extended to the product frame and combined with Yager's rule, so any
/// conflict between them turns into ignorance instead of mass on ∅. The
/// cylinders of non-empty factor sets always intersect, so the result
/// never carries conflict regardless of the inputs.
pub fn expertise_mass(
    qualification: &MassFunction,
    reflection: &MassFunction,
) -> Result<MassFunction> {
    if *qualification.frame() != qualification_frame() || *reflection.frame() != reflection_frame()
    {
        return Err(ProfileError::Belief(
            crate::belief::BeliefError::FrameMismatch,
        ));
    }
    let product = expertise_frame();
    let q4 = vacuous_extension(qualification, &product, Side::Left)?;
    let r4 = vacuous_extension(reflection, &product, Side::Right)?;
    Ok(combine_yager(&[q4, r4])?)
}

/// Projects the expertise mass back onto Ω2 and thresholds the pignistic
/// probability of Q: strictly above `sigma` is Expert. Returns the decision
/// with the betP value it was read from.
pub fn classify(expertise: &MassFunction, sigma: f64) -> Result<(Expertise, f64)> {
    if !sigma.is_finite() || sigma <= 0.0 || sigma >= 1.0 {
        return Err(ProfileError::OutOfRange {
            name: "sigma",
            value: sigma,
            range: "(0,1)",
        });
    }
    let product = expertise_frame();
    let on_q2 = marginalize(expertise, &product, Side::Left)?;
    let betp = on_q2.pignistic()?[0];
    Ok((Expertise::from_score(betp, sigma), betp))
}
