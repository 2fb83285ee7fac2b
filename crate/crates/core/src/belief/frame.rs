use std::fmt;
use std::sync::Arc;

use super::error::{BeliefError, Result};

/// Largest frame the bitmask representation supports.
pub const MAX_FRAME_SIZE: usize = 16;

/// A subset of a frame's labels packed as a bitmask: bit `i` set means
/// `labels[i]` is in the subset. Masks order by their bit pattern, which
/// gives every collection of subsets one canonical iteration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SubsetMask(u16);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_bits(bits: u16) -> Self {
        SubsetMask(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// The one-element subset `{labels[index]}`.
    pub fn singleton(index: usize) -> Self {
        assert!(index < MAX_FRAME_SIZE, "bit index {index} out of range");
        SubsetMask(1 << index)
    }

    pub fn cardinality(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_FRAME_SIZE && self.0 & (1 << index) != 0
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices of the labels in the subset, ascending.
    pub fn iter_indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_FRAME_SIZE).filter(move |i| bits & (1 << i) != 0)
    }
}

/// An ordered frame of discernment. Labels are distinct, non-empty strings;
/// subsets are addressed as [`SubsetMask`] values over the label order.
/// Frames are cheap to clone and immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    labels: Arc<Vec<String>>,
}

impl Frame {
    /// Builds a frame from ordered labels. Fails on an empty list, more than
    /// [`MAX_FRAME_SIZE`] labels, an empty label, or a duplicate.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(BeliefError::InvalidFrame("no labels".into()));
        }
        if labels.len() > MAX_FRAME_SIZE {
            return Err(BeliefError::InvalidFrame(format!(
                "{} labels exceed the maximum of {MAX_FRAME_SIZE}",
                labels.len()
            )));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(BeliefError::InvalidFrame(format!("label {i} is empty")));
            }
            if labels[..i].contains(label) {
                return Err(BeliefError::InvalidFrame(format!(
                    "duplicate label {label:?}"
                )));
            }
        }
        Ok(Frame {
            labels: Arc::new(labels),
        })
    }

    /// Frame of integer grade labels `"1"` through `"n"`.
    pub fn grades(n: usize) -> Result<Self> {
        Frame::new((1..=n).map(|g| g.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        // Construction rejects empty label lists.
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Mask of the whole frame.
    pub fn full_mask(&self) -> SubsetMask {
        // (1 << 16) would overflow a u16, so the 16-label frame is special.
        if self.len() == MAX_FRAME_SIZE {
            SubsetMask::from_bits(u16::MAX)
        } else {
            SubsetMask::from_bits((1u16 << self.len()) - 1)
        }
    }

    /// Mask of the one-label subset `{label}`.
    pub fn singleton(&self, label: &str) -> Result<SubsetMask> {
        self.index_of(label)
            .map(SubsetMask::singleton)
            .ok_or_else(|| BeliefError::InvalidFocal(format!("unknown label {label:?}")))
    }

    /// Mask of the subset holding the given labels. Duplicate labels are
    /// rejected rather than collapsed.
    pub fn subset<'a, I>(&self, labels: I) -> Result<SubsetMask>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut mask = SubsetMask::EMPTY;
        for label in labels {
            let single = self.singleton(label)?;
            if !mask.intersection(single).is_empty() {
                return Err(BeliefError::InvalidFocal(format!(
                    "label {label:?} listed twice"
                )));
            }
            mask = mask.union(single);
        }
        Ok(mask)
    }

    /// Checks that a mask only uses bits of this frame.
    pub fn check_mask(&self, mask: SubsetMask) -> Result<()> {
        if mask.is_subset_of(self.full_mask()) {
            Ok(())
        } else {
            Err(BeliefError::MaskOutOfRange {
                mask: mask.bits(),
                size: self.len(),
            })
        }
    }

    /// All `2^n` subsets of the frame, ascending by bit pattern.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetMask> {
        (0..=u32::from(self.full_mask().bits())).map(|b| SubsetMask::from_bits(b as u16))
    }

    /// Renders a subset against the frame's labels: `∅`, `Ω`, or `{a,b}`.
    pub fn format_subset(&self, mask: SubsetMask) -> String {
        if mask.is_empty() {
            return "∅".to_string();
        }
        if mask == self.full_mask() {
            return "Ω".to_string();
        }
        let labels: Vec<&str> = mask
            .iter_indices()
            .filter(|&i| i < self.len())
            .map(|i| self.label(i))
            .collect();
        format!("{{{}}}", labels.join(","))
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame({})", self.labels.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_label_lists() {
        assert!(Frame::new(Vec::<String>::new()).is_err());
        assert!(Frame::new(["a", "b", "a"]).is_err());
        assert!(Frame::new(["a", ""]).is_err());
        let seventeen: Vec<String> = (0..17).map(|i| i.to_string()).collect();
        assert!(Frame::new(seventeen).is_err());
    }

    #[test]
    fn full_mask_handles_the_sixteen_label_frame() {
        let frame = Frame::grades(16).unwrap();
        assert_eq!(frame.full_mask().bits(), u16::MAX);
        assert_eq!(frame.full_mask().cardinality(), 16);
        let small = Frame::grades(3).unwrap();
        assert_eq!(small.full_mask().bits(), 0b111);
    }

    #[test]
    fn subset_resolution_and_rendering() {
        let frame = Frame::new(["a", "b", "c"]).unwrap();
        let ab = frame.subset(["a", "b"]).unwrap();
        assert_eq!(ab.bits(), 0b011);
        assert_eq!(frame.format_subset(ab), "{a,b}");
        assert_eq!(frame.format_subset(SubsetMask::EMPTY), "∅");
        assert_eq!(frame.format_subset(frame.full_mask()), "Ω");
        assert!(frame.subset(["a", "a"]).is_err());
        assert!(frame.subset(["d"]).is_err());
        assert!(frame.check_mask(SubsetMask::from_bits(0b1000)).is_err());
    }

    #[test]
    fn mask_set_algebra() {
        let a = SubsetMask::from_bits(0b0110);
        let b = SubsetMask::from_bits(0b0011);
        assert_eq!(a.intersection(b).bits(), 0b0010);
        assert_eq!(a.union(b).bits(), 0b0111);
        assert!(SubsetMask::from_bits(0b0010).is_subset_of(a));
        assert!(!a.is_subset_of(b));
        assert_eq!(a.cardinality(), 2);
        assert_eq!(a.iter_indices().collect::<Vec<_>>(), vec![1, 2]);
    }
}
