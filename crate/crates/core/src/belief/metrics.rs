use super::error::{BeliefError, Result};
use super::frame::SubsetMask;
use super::mass::MassFunction;

/// Jaccard similarity of two subsets, with the conventions the distance
/// needs: a subset matches itself perfectly (the empty set included) and the
/// empty set is orthogonal to everything else.
fn jaccard(a: SubsetMask, b: SubsetMask) -> f64 {
    if a == b {
        return 1.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    f64::from(a.intersection(b).cardinality()) / f64::from(a.union(b).cardinality())
}

impl MassFunction {
    /// Jousselme distance to another mass on the same frame: the quadratic
    /// form `sqrt(0.5 (m1-m2)ᵀ D (m1-m2))` with `D` the Jaccard similarity
    /// matrix over subsets. Only subsets focal in either mass can carry a
    /// nonzero difference, so the sum runs over those alone. The result
    /// lands in `[0, 1]` and is clamped against rounding at the edges.
    pub fn jousselme_distance(&self, other: &MassFunction) -> Result<f64> {
        if self.frame() != other.frame() {
            return Err(BeliefError::FrameMismatch);
        }
        let mut masks: Vec<SubsetMask> = self.focals().map(|(m, _)| m).collect();
        for (m, _) in other.focals() {
            if !masks.contains(&m) {
                masks.push(m);
            }
        }
        let diffs: Vec<f64> = masks
            .iter()
            .map(|&m| self.mass(m) - other.mass(m))
            .collect();
        let mut quad = 0.0;
        for (i, &a) in masks.iter().enumerate() {
            for (j, &b) in masks.iter().enumerate() {
                quad += diffs[i] * diffs[j] * jaccard(a, b);
            }
        }
        Ok((0.5 * quad).max(0.0).sqrt().min(1.0))
    }

    /// Specificity of the mass: 1 for a categorical singleton, 0 for the
    /// vacuous mass, linear in the log-cardinality of the focals between.
    /// Needs at least two labels in the frame and no mass on the empty set.
    pub fn specificity(&self) -> Result<f64> {
        let n = self.frame().len();
        if n < 2 {
            return Err(BeliefError::DegenerateFrame);
        }
        let denom = (n as f64).log2();
        let mut spread = 0.0;
        for (mask, value) in self.focals() {
            if mask.is_empty() {
                return Err(BeliefError::InvalidFocal(
                    "specificity of a mass with conflict".into(),
                ));
            }
            spread += value * f64::from(mask.cardinality()).log2() / denom;
        }
        Ok(1.0 - spread)
    }
}
