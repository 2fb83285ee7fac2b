//! Belief-function calculus and contributor profiling for crowdsourcing
//! answer logs.
//!
//! The crate is organised in layers:
//!
//! * [`belief`] is a small Dempster-Shafer toolkit: frames of discernment,
//!   mass functions over bitmask subsets, conjunctive and Yager combination,
//!   vacuous extension and marginalization across product frames, the
//!   pignistic transform, the Jousselme distance and a specificity measure.
//! * [`profile`] turns a log of crowd answers into per-contributor evidence:
//!   exactness and precision degrees, qualification and reflection masses,
//!   their fusion on the joint frame, and the expert / non-expert decision.
//! * [`baselines`] holds the comparison classifiers (weighted global degree,
//!   per-question majority vote).
//! * [`experiment`] generates synthetic crowds with planted archetypes and
//!   runs the evaluation protocol over them.
//! * [`io`] reads and writes the CSV and TOML artifacts and keeps report
//!   output byte-stable for a fixed seed.
//!
//! Frames hold at most 16 labels so any subset fits in a `u16`; all
//! collections iterate in a deterministic order. Values are immutable after
//! construction and every operation is a pure function, so everything here
//! can be shared freely across threads.

pub mod baselines;
pub mod belief;
pub mod experiment;
pub mod io;
pub mod profile;

pub use belief::{Frame, MassFunction, ProductFrame, Side, SubsetMask};
pub use profile::{ContributorAnswer, ContributorProfile, Expertise, QuestionSpec};
