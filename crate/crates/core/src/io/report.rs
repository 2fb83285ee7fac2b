//! Report emission. Every numeric field goes through [`super::fmt_f64`], so
//! reports are byte-stable for equal inputs and parse back to the exact
//! values.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::baselines::BaselineResult;
use crate::belief::{Frame, SubsetMask};
use crate::experiment::{Archetype, Estimator, EvaluationReport, RunSummary};
use crate::profile::ContributorProfile;

use super::answers::write_csv;
use super::{fmt_f64, LoadError};

/// The files [`write_evaluation`] produces, in write order.
pub const EVALUATION_FILES: [&str; 4] = [
    "evaluation.csv",
    "summary.csv",
    "agreement.csv",
    "majority.csv",
];

/// Renders a subset as the answer-file convention: `|`-joined labels in
/// frame order.
pub fn render_subset(frame: &Frame, mask: SubsetMask) -> String {
    mask.iter_indices()
        .map(|i| frame.label(i))
        .collect::<Vec<_>>()
        .join("|")
}

const PROFILE_HEADER: [&str; 19] = [
    "contributor_id",
    "de",
    "dp",
    "m2_q",
    "m2_nq",
    "m2_full",
    "m3_r",
    "m3_nr",
    "m3_full",
    "m4_qr",
    "m4_qnr",
    "m4_nqr",
    "m4_nqnr",
    "m4_full",
    "betp_q_omega2",
    "betp_q_omega4",
    "dg",
    "decision",
    "dg_decision",
];

/// One row per contributor, sorted by id: the degrees, the three mass
/// functions (the expertise mass by its four pair singletons and full
/// ignorance, which determine it), both betP(Q) readings, and the
/// decisions of the belief pipeline and the global-degree baseline.
pub fn write_profile_report(
    path: &Path,
    profiles: &[ContributorProfile],
    baselines: &[BaselineResult],
) -> Result<(), LoadError> {
    assert_eq!(profiles.len(), baselines.len(), "one baseline per profile");
    let mut rows = Vec::with_capacity(profiles.len());
    for (p, b) in profiles.iter().zip(baselines) {
        assert_eq!(p.contributor_id, b.contributor_id, "aligned inputs");
        let q = &p.qualification;
        let r = &p.reflection;
        let e = &p.expertise;
        let first = SubsetMask::singleton(0);
        let second = SubsetMask::singleton(1);
        let row: Vec<String> = [
            q.mass(first),
            q.mass(second),
            q.mass(q.frame().full_mask()),
            r.mass(first),
            r.mass(second),
            r.mass(r.frame().full_mask()),
            e.mass(SubsetMask::singleton(0)),
            e.mass(SubsetMask::singleton(1)),
            e.mass(SubsetMask::singleton(2)),
            e.mass(SubsetMask::singleton(3)),
            e.mass(e.frame().full_mask()),
            p.betp_qualification,
            p.betp_qualified,
            b.dg,
        ]
        .into_iter()
        .map(fmt_f64)
        .collect();
        let mut record = vec![p.contributor_id.clone(), fmt_f64(p.de), fmt_f64(p.dp)];
        record.extend(row);
        record.push(p.decision.as_str().to_string());
        record.push(b.dg_decision.as_str().to_string());
        rows.push(record);
    }
    write_csv(path, &PROFILE_HEADER, rows)
}

fn evaluation_rows(report: &EvaluationReport) -> Vec<Vec<String>> {
    report
        .contributors
        .iter()
        .map(|c| {
            let mut row = vec![
                c.contributor_id.clone(),
                c.archetype.map_or("", |a| a.as_str()).to_string(),
                fmt_f64(c.tbc),
                c.theoretical.as_str().to_string(),
            ];
            for scores in [&c.ground_truth, &c.test] {
                for e in Estimator::ALL {
                    row.push(fmt_f64(scores.score(e)));
                }
                for e in Estimator::ALL {
                    row.push(scores.decision(e).as_str().to_string());
                }
            }
            row
        })
        .collect()
}

fn summary_rows(run: &RunSummary) -> Vec<Vec<String>> {
    Estimator::ALL
        .iter()
        .map(|&e| {
            let i = e.index();
            vec![
                run.run.to_string(),
                e.name().to_string(),
                fmt_f64(run.tbc_vs_theoretical[i]),
                run.tbc_vs_planted.map_or(String::new(), |p| fmt_f64(p[i])),
                run.expert_counts[i].to_string(),
                (run.n_contributors - run.expert_counts[i]).to_string(),
            ]
        })
        .collect()
}

fn agreement_rows(report: &EvaluationReport) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for run in [&report.ground_truth_run, &report.test_run] {
        for a in Estimator::ALL {
            for b in Estimator::ALL {
                if a.index() > b.index() {
                    continue;
                }
                rows.push(vec![
                    run.run.to_string(),
                    a.name().to_string(),
                    b.name().to_string(),
                    fmt_f64(run.agreement[a.index()][b.index()]),
                ]);
            }
        }
    }
    for e in Estimator::ALL {
        rows.push(vec![
            "cross".to_string(),
            e.name().to_string(),
            e.name().to_string(),
            fmt_f64(report.cross_run_agreement[e.index()]),
        ]);
    }
    rows
}

/// Writes the four evaluation files into `dir` and returns their paths.
pub fn write_evaluation(dir: &Path, report: &EvaluationReport) -> Result<Vec<PathBuf>, LoadError> {
    let mut header = vec![
        "contributor_id".to_string(),
        "archetype".to_string(),
        "tbc".to_string(),
        "theoretical".to_string(),
    ];
    for prefix in ["gt", "test"] {
        for e in Estimator::ALL {
            header.push(format!("{prefix}_betp_{}", e.name()));
        }
        for e in Estimator::ALL {
            header.push(format!("{prefix}_decision_{}", e.name()));
        }
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();

    type Table<'a> = (&'a str, &'a [&'a str], Vec<Vec<String>>);
    let mut written = Vec::new();
    let jobs: [Table; 4] = [
        (EVALUATION_FILES[0], &header_refs, evaluation_rows(report)),
        (
            EVALUATION_FILES[1],
            &[
                "run",
                "estimator",
                "tbc_vs_theoretical_pct",
                "tbc_vs_planted_pct",
                "experts",
                "non_experts",
            ],
            [&report.ground_truth_run, &report.test_run]
                .into_iter()
                .flat_map(summary_rows)
                .collect(),
        ),
        (
            EVALUATION_FILES[2],
            &["run", "estimator_a", "estimator_b", "agreement_pct"],
            agreement_rows(report),
        ),
        (
            EVALUATION_FILES[3],
            &["question_id", "majority_answer"],
            report
                .majority
                .iter()
                .map(|(q, a)| vec![q.clone(), a.clone()])
                .collect(),
        ),
    ];
    for (name, header, rows) in jobs {
        let path = dir.join(name);
        write_csv(&path, header, rows)?;
        written.push(path);
    }
    Ok(written)
}

/// Writes the generator's archetype assignment.
pub fn write_planted(path: &Path, planted: &BTreeMap<String, Archetype>) -> Result<(), LoadError> {
    let rows = planted
        .iter()
        .map(|(c, a)| vec![c.clone(), a.as_str().to_string()])
        .collect();
    write_csv(path, &["contributor_id", "archetype"], rows)
}
