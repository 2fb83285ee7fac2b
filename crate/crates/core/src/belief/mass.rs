use std::collections::BTreeMap;
use std::fmt;

use super::error::{BeliefError, Result};
use super::frame::{Frame, SubsetMask};

/// Construction tolerance: masses must sum to 1 within this.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Operations drop focal elements lighter than this and fold the deficit
/// back into the heaviest focal, so sums stay exact without accumulating
/// denormal noise.
pub const PRUNE_EPS: f64 = 1e-12;

/// A mass function over the subsets of a frame. Entries are the focal
/// elements (strictly positive mass); everything else is implicitly zero.
/// Mass on the empty set is legal and denotes unresolved conflict.
///
/// The map is ordered by mask, so iteration, formatting, and equality are
/// deterministic. Instances are immutable; operations return new values.
#[derive(Clone, PartialEq, Debug)]
pub struct MassFunction {
    frame: Frame,
    masses: BTreeMap<SubsetMask, f64>,
}

impl MassFunction {
    /// The vacuous mass: total ignorance, all weight on the whole frame.
    pub fn vacuous(frame: Frame) -> Self {
        let mut masses = BTreeMap::new();
        masses.insert(frame.full_mask(), 1.0);
        MassFunction { frame, masses }
    }

    /// All weight on one non-empty subset.
    pub fn categorical(frame: Frame, focal: SubsetMask) -> Result<Self> {
        frame.check_mask(focal)?;
        if focal.is_empty() {
            return Err(BeliefError::InvalidFocal(
                "categorical mass on the empty set".into(),
            ));
        }
        let mut masses = BTreeMap::new();
        masses.insert(focal, 1.0);
        Ok(MassFunction { frame, masses })
    }

    /// Simple support: weight `w` on one focal, the rest on the whole frame.
    /// The focal must be a proper non-empty subset; `w = 1` collapses to a
    /// categorical mass and `w = 0` to the vacuous one.
    pub fn simple_support(frame: Frame, focal: SubsetMask, w: f64) -> Result<Self> {
        frame.check_mask(focal)?;
        if focal.is_empty() {
            return Err(BeliefError::InvalidFocal(
                "support for the empty set".into(),
            ));
        }
        if focal == frame.full_mask() {
            return Err(BeliefError::InvalidFocal(
                "support focal covers the whole frame".into(),
            ));
        }
        if !(0.0..=1.0).contains(&w) || !w.is_finite() {
            return Err(BeliefError::OutOfRange {
                name: "support weight",
                value: w,
                range: "[0,1]",
            });
        }
        let mut masses = BTreeMap::new();
        if w > 0.0 {
            masses.insert(focal, w);
        }
        if w < 1.0 {
            masses.insert(frame.full_mask(), 1.0 - w);
        }
        Ok(MassFunction { frame, masses })
    }

    /// Builds a mass function from explicit `(subset, mass)` pairs. Repeated
    /// subsets accumulate. Masses must be finite and non-negative; exact
    /// zeros are dropped; the total must be 1 within [`NORMALIZATION_TOL`].
    pub fn from_masses<I>(frame: Frame, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, f64)>,
    {
        let mut masses: BTreeMap<SubsetMask, f64> = BTreeMap::new();
        for (mask, value) in pairs {
            frame.check_mask(mask)?;
            if !value.is_finite() || value < 0.0 {
                return Err(BeliefError::OutOfRange {
                    name: "mass",
                    value,
                    range: "[0,1]",
                });
            }
            if value > 0.0 {
                *masses.entry(mask).or_insert(0.0) += value;
            }
        }
        let sum: f64 = masses.values().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(BeliefError::NotNormalized {
                sum,
                tol: NORMALIZATION_TOL,
            });
        }
        Ok(MassFunction { frame, masses })
    }

    /// Internal constructor for operation results: prunes entries below
    /// [`PRUNE_EPS`] and folds any deficit into the heaviest focal (ties
    /// break toward the smallest mask), keeping the total at exactly the
    /// incoming sum. Callers guarantee the incoming sum is 1 within
    /// tolerance.
    pub(crate) fn from_operation(frame: Frame, raw: BTreeMap<SubsetMask, f64>) -> Self {
        let mut masses: BTreeMap<SubsetMask, f64> =
            raw.into_iter().filter(|&(_, v)| v >= PRUNE_EPS).collect();
        if masses.is_empty() {
            // Everything pruned away; park the unit mass on the whole frame.
            masses.insert(frame.full_mask(), 1.0);
        }
        let sum: f64 = masses.values().sum();
        debug_assert!(
            (sum - 1.0).abs() <= 1e-6,
            "operation produced an unnormalized mass: {sum}"
        );
        let residual = 1.0 - sum;
        if residual != 0.0 {
            let heaviest = masses
                .iter()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap().then(b.0.cmp(a.0)))
                .map(|(&mask, _)| mask)
                .expect("non-empty focal set");
            *masses.get_mut(&heaviest).unwrap() += residual;
        }
        MassFunction { frame, masses }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Mass of one subset; zero when the subset is not focal.
    pub fn mass(&self, mask: SubsetMask) -> f64 {
        self.masses.get(&mask).copied().unwrap_or(0.0)
    }

    /// Mass on the empty set (the retained conflict).
    pub fn conflict(&self) -> f64 {
        self.mass(SubsetMask::EMPTY)
    }

    /// Focal elements with their masses, ascending by mask.
    pub fn focals(&self) -> impl Iterator<Item = (SubsetMask, f64)> + '_ {
        self.masses.iter().map(|(&m, &v)| (m, v))
    }

    pub fn focal_count(&self) -> usize {
        self.masses.len()
    }

    pub fn total(&self) -> f64 {
        self.masses.values().sum()
    }

    pub fn is_vacuous(&self) -> bool {
        self.masses.len() == 1 && self.masses.contains_key(&self.frame.full_mask())
    }

    /// Pignistic probability of each label, in frame order: every focal
    /// spreads its mass evenly over its members, rescaled by the non-conflict
    /// share. Undefined when all mass sits on the empty set.
    pub fn pignistic(&self) -> Result<Vec<f64>> {
        let conflict = self.conflict();
        let scale = 1.0 - conflict;
        if scale <= 0.0 {
            return Err(BeliefError::UndefinedTransform);
        }
        let mut p = vec![0.0; self.frame.len()];
        for (mask, value) in self.focals() {
            if mask.is_empty() {
                continue;
            }
            let share = value / (f64::from(mask.cardinality()) * scale);
            for i in mask.iter_indices() {
                p[i] += share;
            }
        }
        Ok(p)
    }

    /// Index of the label with the greatest pignistic probability; the
    /// first of the frame's labels wins ties.
    pub fn decide_index(&self) -> Result<usize> {
        let p = self.pignistic()?;
        let mut best = 0;
        for (i, &v) in p.iter().enumerate().skip(1) {
            if v > p[best] {
                best = i;
            }
        }
        Ok(best)
    }

    /// Label with the greatest pignistic probability.
    pub fn decide(&self) -> Result<&str> {
        Ok(self.frame.label(self.decide_index()?))
    }
}

impl fmt::Display for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, value) in self.focals() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}:{}", self.frame.format_subset(mask), value)?;
        }
        Ok(())
    }
}
