use std::collections::BTreeMap;

use super::error::{BeliefError, Result};
use super::frame::SubsetMask;
use super::mass::MassFunction;

fn check_shared_frame(sources: &[MassFunction]) -> Result<()> {
    if sources.is_empty() {
        return Err(BeliefError::EmptyCombination);
    }
    let frame = sources[0].frame();
    if sources.iter().any(|m| m.frame() != frame) {
        return Err(BeliefError::FrameMismatch);
    }
    Ok(())
}

fn conjunctive_pair(
    acc: &BTreeMap<SubsetMask, f64>,
    next: &MassFunction,
) -> BTreeMap<SubsetMask, f64> {
    let mut out = BTreeMap::new();
    for (&a, &va) in acc {
        for (b, vb) in next.focals() {
            *out.entry(a.intersection(b)).or_insert(0.0) += va * vb;
        }
    }
    out
}

fn conjunctive_raw(sources: &[MassFunction]) -> BTreeMap<SubsetMask, f64> {
    let mut acc: BTreeMap<SubsetMask, f64> = sources[0].focals().collect();
    for m in &sources[1..] {
        acc = conjunctive_pair(&acc, m);
    }
    acc
}

/// Unnormalized conjunctive combination: every way the sources' focals can
/// intersect contributes the product of their masses, and disagreement
/// accumulates on the empty set instead of being renormalized away.
pub fn combine_conjunctive(sources: &[MassFunction]) -> Result<MassFunction> {
    check_shared_frame(sources)?;
    let raw = conjunctive_raw(sources);
    Ok(MassFunction::from_operation(
        sources[0].frame().clone(),
        raw,
    ))
}

/// Yager's rule: conjunctive combination of all sources at once, with the
/// conflict then moved onto the whole frame as fresh ignorance. The transfer
/// happens once, after the full multi-source product, because the rule is
/// not associative.
pub fn combine_yager(sources: &[MassFunction]) -> Result<MassFunction> {
    check_shared_frame(sources)?;
    let mut raw = conjunctive_raw(sources);
    if let Some(conflict) = raw.remove(&SubsetMask::EMPTY) {
        let full = sources[0].frame().full_mask();
        *raw.entry(full).or_insert(0.0) += conflict;
    }
    Ok(MassFunction::from_operation(
        sources[0].frame().clone(),
        raw,
    ))
}

/// Pointwise arithmetic mean of mass functions on one frame.
pub fn average_masses(sources: &[MassFunction]) -> Result<MassFunction> {
    check_shared_frame(sources)?;
    let weight = 1.0 / sources.len() as f64;
    let mut raw: BTreeMap<SubsetMask, f64> = BTreeMap::new();
    for m in sources {
        for (mask, value) in m.focals() {
            *raw.entry(mask).or_insert(0.0) += value * weight;
        }
    }
    Ok(MassFunction::from_operation(
        sources[0].frame().clone(),
        raw,
    ))
}
