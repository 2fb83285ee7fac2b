use std::collections::BTreeMap;

use super::error::{BeliefError, Result};
use super::frame::{Frame, SubsetMask, MAX_FRAME_SIZE};
use super::mass::MassFunction;

/// Which factor of a product frame an operation addresses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// The product of two frames. The pair `(left[i], right[j])` sits at joint
/// index `i * right.len() + j` and is labelled `(left[i],right[j])`, so the
/// joint frame is an ordinary [`Frame`] and joint masses are ordinary mass
/// functions.
#[derive(Clone, PartialEq, Debug)]
pub struct ProductFrame {
    left: Frame,
    right: Frame,
    joint: Frame,
}

impl ProductFrame {
    /// Builds the product of two frames. Their sizes multiplied must still
    /// fit the bitmask representation.
    pub fn new(left: Frame, right: Frame) -> Result<Self> {
        let total = left.len() * right.len();
        if total > MAX_FRAME_SIZE {
            return Err(BeliefError::InvalidFrame(format!(
                "product of {} x {} labels exceeds the maximum of {MAX_FRAME_SIZE}",
                left.len(),
                right.len()
            )));
        }
        let mut labels = Vec::with_capacity(total);
        for l in left.labels() {
            for r in right.labels() {
                labels.push(format!("({l},{r})"));
            }
        }
        let joint = Frame::new(labels)?;
        Ok(ProductFrame { left, right, joint })
    }

    pub fn left(&self) -> &Frame {
        &self.left
    }

    pub fn right(&self) -> &Frame {
        &self.right
    }

    pub fn joint(&self) -> &Frame {
        &self.joint
    }

    pub fn factor(&self, side: Side) -> &Frame {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// Joint index of the pair `(left[i], right[j])`.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.left.len() && j < self.right.len());
        i * self.right.len() + j
    }

    /// Cylinder of a factor subset: all pairs whose named coordinate lies in
    /// the subset. This is how a factor mask reads on the joint frame.
    pub fn cylinder(&self, mask: SubsetMask, side: Side) -> SubsetMask {
        let mut out = SubsetMask::EMPTY;
        for i in 0..self.left.len() {
            for j in 0..self.right.len() {
                let hit = match side {
                    Side::Left => mask.contains(i),
                    Side::Right => mask.contains(j),
                };
                if hit {
                    out = out.union(SubsetMask::singleton(self.pair_index(i, j)));
                }
            }
        }
        out
    }

    /// Projection of a joint subset onto one factor: the coordinates that
    /// appear in at least one of its pairs.
    pub fn project(&self, mask: SubsetMask, side: Side) -> SubsetMask {
        let mut out = SubsetMask::EMPTY;
        for i in 0..self.left.len() {
            for j in 0..self.right.len() {
                if mask.contains(self.pair_index(i, j)) {
                    let coord = match side {
                        Side::Left => i,
                        Side::Right => j,
                    };
                    out = out.union(SubsetMask::singleton(coord));
                }
            }
        }
        out
    }
}

/// Carries a factor mass up to the joint frame without adding information:
/// each focal becomes its cylinder, keeping its mass.
pub fn vacuous_extension(
    m: &MassFunction,
    product: &ProductFrame,
    side: Side,
) -> Result<MassFunction> {
    if m.frame() != product.factor(side) {
        return Err(BeliefError::FrameMismatch);
    }
    let mut raw = BTreeMap::new();
    for (mask, value) in m.focals() {
        *raw.entry(product.cylinder(mask, side)).or_insert(0.0) += value;
    }
    Ok(MassFunction::from_operation(product.joint().clone(), raw))
}

/// Collapses a joint mass onto one factor: each focal projects onto that
/// factor's coordinates, masses of subsets sharing a projection add up.
pub fn marginalize(m: &MassFunction, product: &ProductFrame, side: Side) -> Result<MassFunction> {
    if m.frame() != product.joint() {
        return Err(BeliefError::FrameMismatch);
    }
    let mut raw = BTreeMap::new();
    for (mask, value) in m.focals() {
        *raw.entry(product.project(mask, side)).or_insert(0.0) += value;
    }
    Ok(MassFunction::from_operation(
        product.factor(side).clone(),
        raw,
    ))
}
