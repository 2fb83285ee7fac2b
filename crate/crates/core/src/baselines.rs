//! Reference estimators the profiling pipeline is compared against: a
//! weighted global degree over exactness and precision, and per-question
//! majority vote.

use std::collections::BTreeMap;

use crate::belief::SubsetMask;
use crate::profile::{ContributorAnswer, ContributorProfile, Expertise, ProfileError, Result};

/// Global expertise degree: the convex combination `beta*de + (1-beta)*dp`.
pub fn global_degree(de: f64, dp: f64, beta: f64) -> Result<f64> {
    for (name, v) in [("de", de), ("dp", dp), ("beta", beta)] {
        if !v.is_finite() || !(0.0..=1.0).contains(&v) {
            return Err(ProfileError::OutOfRange {
                name,
                value: v,
                range: "[0,1]",
            });
        }
    }
    Ok(beta * de + (1.0 - beta) * dp)
}

/// Thresholds a global degree the same way the belief pipeline thresholds
/// betP: Expert strictly above sigma.
pub fn dg_classify(dg: f64, sigma: f64) -> Expertise {
    Expertise::from_score(dg, sigma)
}

/// One contributor's baseline verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct BaselineResult {
    pub contributor_id: String,
    pub dg: f64,
    pub dg_decision: Expertise,
}

/// Global-degree results for a profiled crowd, in profile order.
pub fn dg_results(
    profiles: &[ContributorProfile],
    beta: f64,
    sigma: f64,
) -> Result<Vec<BaselineResult>> {
    profiles
        .iter()
        .map(|p| {
            let dg = global_degree(p.de, p.dp, beta)?;
            Ok(BaselineResult {
                contributor_id: p.contributor_id.clone(),
                dg,
                dg_decision: dg_classify(dg, sigma),
            })
        })
        .collect()
}

/// The answer subset given most often, compared by exact subset equality;
/// ties go to the smallest bitmask. Imprecise answers are candidates of
/// their own, never merged with overlapping ones.
pub fn majority_vote(answers: &[SubsetMask]) -> Result<SubsetMask> {
    if answers.is_empty() {
        return Err(ProfileError::EmptyDataset);
    }
    let mut counts: BTreeMap<SubsetMask, usize> = BTreeMap::new();
    for &a in answers {
        *counts.entry(a).or_insert(0) += 1;
    }
    // Ascending mask order with a strict comparison: the smallest mask
    // among the most frequent wins.
    let mut best = (SubsetMask::EMPTY, 0usize);
    for (&mask, &count) in &counts {
        if count > best.1 {
            best = (mask, count);
        }
    }
    Ok(best.0)
}

/// Majority answer per question over a raw answer log.
pub fn majority_votes(answers: &[ContributorAnswer]) -> BTreeMap<String, SubsetMask> {
    let mut grouped: BTreeMap<String, Vec<SubsetMask>> = BTreeMap::new();
    for a in answers {
        grouped
            .entry(a.question_id.clone())
            .or_default()
            .push(a.answer);
    }
    grouped
        .into_iter()
        .map(|(q, list)| {
            let winner = majority_vote(&list).expect("non-empty group");
            (q, winner)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::Frame;

    fn close(x: f64, y: f64) -> bool {
        (x - y).abs() < 1e-12
    }

    #[test]
    fn global_degree_is_the_convex_combination() {
        assert!(close(global_degree(0.8, 0.5, 0.5).unwrap(), 0.65));
        assert_eq!(global_degree(0.8, 0.5, 1.0).unwrap(), 0.8);
        assert_eq!(global_degree(0.8, 0.5, 0.0).unwrap(), 0.5);
        for beta in [0.0, 0.3, 0.7, 1.0] {
            assert!(close(global_degree(0.4, 0.4, beta).unwrap(), 0.4));
        }
    }

    #[test]
    fn global_degree_rejects_out_of_range_inputs() {
        assert!(global_degree(1.2, 0.5, 0.5).is_err());
        assert!(global_degree(0.5, -0.1, 0.5).is_err());
        assert!(global_degree(0.5, 0.5, 1.5).is_err());
        assert!(global_degree(f64::NAN, 0.5, 0.5).is_err());
    }

    #[test]
    fn dg_classification_is_strict() {
        assert_eq!(dg_classify(0.65, 0.5), Expertise::Expert);
        assert_eq!(dg_classify(0.5, 0.5), Expertise::NonExpert);
        assert_eq!(dg_classify(0.0, 0.4), Expertise::NonExpert);
    }

    #[test]
    fn majority_prefers_the_most_frequent_subset() {
        let frame = Frame::grades(5).unwrap();
        let three = frame.singleton("3").unwrap();
        let four = frame.singleton("4").unwrap();
        assert_eq!(majority_vote(&[three, three, four]).unwrap(), three);
    }

    #[test]
    fn majority_tie_goes_to_the_smallest_mask() {
        let frame = Frame::grades(5).unwrap();
        let three = frame.singleton("3").unwrap();
        let four = frame.singleton("4").unwrap();
        assert_eq!(majority_vote(&[four, three]).unwrap(), three);
    }

    #[test]
    fn majority_counts_subsets_by_equality_not_overlap() {
        let frame = Frame::grades(5).unwrap();
        let three = frame.singleton("3").unwrap();
        let pair = frame.subset(["3", "4"]).unwrap();
        assert_eq!(majority_vote(&[pair, pair, three]).unwrap(), pair);
    }

    #[test]
    fn majority_needs_at_least_one_answer() {
        assert!(majority_vote(&[]).is_err());
    }

    #[test]
    fn majority_ignores_answer_order() {
        let frame = Frame::grades(5).unwrap();
        let a = frame.singleton("1").unwrap();
        let b = frame.singleton("2").unwrap();
        let mut answers = vec![a, b, b, a, b];
        let forward = majority_vote(&answers).unwrap();
        answers.reverse();
        assert_eq!(majority_vote(&answers).unwrap(), forward);
    }
}
