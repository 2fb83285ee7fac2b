//! Dempster-Shafer belief functions over small finite frames.
//!
//! A frame of discernment lists the exhaustive, mutually exclusive outcomes
//! of one question. A mass function assigns weight to subsets of the frame
//! (its focal elements) and sums to one. Combination is unnormalized
//! conjunctive fusion, which keeps the weight of the empty set as explicit
//! conflict, or Yager's variant, which moves that conflict onto the whole
//! frame. Masses defined on one frame travel to a two-frame product by
//! vacuous extension and come back by marginalization.

mod combine;
mod error;
mod frame;
mod mass;
mod metrics;
mod product;

pub use combine::{average_masses, combine_conjunctive, combine_yager};
pub use error::{BeliefError, Result};
pub use frame::{Frame, SubsetMask, MAX_FRAME_SIZE};
pub use mass::{MassFunction, NORMALIZATION_TOL, PRUNE_EPS};
pub use product::{marginalize, vacuous_extension, ProductFrame, Side};
