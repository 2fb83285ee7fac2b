//! The two dataset files. Answers: `contributor_id,question_id,answer,
//! certainty,response_time_s` with `|`-joined labels for imprecise answers.
//! Questions: `question_id,frame_size,t_th_s,is_ground_truth,expected_answer`
//! where the expected answer is present exactly on ground-truth rows.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::belief::{Frame, SubsetMask};
use crate::profile::{CertaintyLevel, ContributorAnswer, QuestionMap, QuestionSpec};

use super::report::render_subset;
use super::{fmt_f64, write_atomic};

const ANSWERS_HEADER: [&str; 5] = [
    "contributor_id",
    "question_id",
    "answer",
    "certainty",
    "response_time_s",
];
const QUESTIONS_HEADER: [&str; 5] = [
    "question_id",
    "frame_size",
    "t_th_s",
    "is_ground_truth",
    "expected_answer",
];

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", .path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{}: expected header {expected:?}, found {found:?}", .path.display())]
    Header {
        path: PathBuf,
        expected: String,
        found: String,
    },

    #[error("{} line {line}: {reason}", .path.display())]
    Row {
        path: PathBuf,
        line: u64,
        reason: String,
    },

    /// A writer was handed an answer whose question is not in the map.
    #[error("question {0:?} is not in the question set")]
    UnknownQuestion(String),
}

fn open_checked(path: &Path, expected: &[&str]) -> Result<csv::Reader<std::fs::File>, LoadError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|source| LoadError::Csv {
            path: path.to_path_buf(),
            source,
        })?;
    let found = reader
        .headers()
        .map_err(|source| LoadError::Csv {
            path: path.to_path_buf(),
            source,
        })?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if found != expected.join(",") {
        return Err(LoadError::Header {
            path: path.to_path_buf(),
            expected: expected.join(","),
            found,
        });
    }
    Ok(reader)
}

fn row_error(path: &Path, line: u64, reason: impl Into<String>) -> LoadError {
    LoadError::Row {
        path: path.to_path_buf(),
        line,
        reason: reason.into(),
    }
}

/// Resolves a `|`-joined label list against a frame. Tokens must be frame
/// labels (so labels themselves must not contain `|`), each at most once.
fn parse_subset(frame: &Frame, text: &str) -> Result<SubsetMask, String> {
    if text.is_empty() {
        return Err("empty answer".to_string());
    }
    let mut mask = SubsetMask::EMPTY;
    for token in text.split('|') {
        let single = frame
            .singleton(token)
            .map_err(|_| format!("unknown label {token:?}"))?;
        if single.is_subset_of(mask) {
            return Err(format!("label {token:?} repeated"));
        }
        mask = mask.union(single);
    }
    Ok(mask)
}

fn parse_time(field: &str, name: &str) -> Result<f64, String> {
    let value: f64 = field
        .parse()
        .map_err(|_| format!("{name} {field:?} is not a number"))?;
    if !value.is_finite() || value <= 0.0 {
        return Err(format!("{name} must be a positive number, got {field}"));
    }
    Ok(value)
}

/// Loads and validates the question file. Frames are grade frames with
/// labels `"1"` through `"{frame_size}"`.
pub fn load_questions(path: &Path) -> Result<QuestionMap, LoadError> {
    let mut reader = open_checked(path, &QUESTIONS_HEADER)?;
    let mut questions = QuestionMap::new();
    for record in reader.records() {
        let record = record.map_err(|source| LoadError::Csv {
            path: path.to_path_buf(),
            source,
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let err = |reason: String| row_error(path, line, reason);

        let question_id = record[0].to_string();
        if question_id.is_empty() {
            return Err(err("empty question_id".to_string()));
        }
        if questions.contains_key(&question_id) {
            return Err(err(format!("duplicate question {question_id:?}")));
        }
        let frame_size: usize = record[1]
            .parse()
            .map_err(|_| err(format!("frame_size {:?} is not an integer", &record[1])))?;
        if !(2..=16).contains(&frame_size) {
            return Err(err(format!(
                "frame_size must be between 2 and 16, got {frame_size}"
            )));
        }
        let frame = Frame::grades(frame_size).expect("grade frames of checked size are valid");
        let theoretical_time_s = parse_time(&record[2], "t_th_s").map_err(err)?;
        let is_ground_truth = match &record[3] {
            "true" => true,
            "false" => false,
            other => {
                return Err(err(format!(
                    "is_ground_truth must be \"true\" or \"false\", got {other:?}"
                )))
            }
        };
        let expected_answer = match (is_ground_truth, &record[4]) {
            (true, "") => {
                return Err(err(
                    "ground-truth question without expected_answer".to_string()
                ))
            }
            (true, text) => Some(parse_subset(&frame, text).map_err(err)?),
            (false, "") => None,
            (false, text) => {
                return Err(err(format!(
                    "expected_answer {text:?} set on a non-ground-truth question"
                )))
            }
        };
        questions.insert(
            question_id.clone(),
            QuestionSpec {
                question_id,
                frame,
                theoretical_time_s,
                expected_answer,
            },
        );
    }
    Ok(questions)
}

/// Loads and validates the answer file. Answer subsets are resolved against
/// the question's frame, so the question file must be loaded first.
pub fn load_answers(
    path: &Path,
    questions: &QuestionMap,
) -> Result<Vec<ContributorAnswer>, LoadError> {
    let mut reader = open_checked(path, &ANSWERS_HEADER)?;
    let mut answers = Vec::new();
    let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
    for record in reader.records() {
        let record = record.map_err(|source| LoadError::Csv {
            path: path.to_path_buf(),
            source,
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let err = |reason: String| row_error(path, line, reason);

        let contributor_id = record[0].to_string();
        if contributor_id.is_empty() {
            return Err(err("empty contributor_id".to_string()));
        }
        let question_id = record[1].to_string();
        let Some(spec) = questions.get(&question_id) else {
            return Err(err(format!("unknown question {question_id:?}")));
        };
        if !seen.insert((contributor_id.clone(), question_id.clone())) {
            return Err(err(format!(
                "duplicate answer for contributor {contributor_id:?} question {question_id:?}"
            )));
        }
        let answer = parse_subset(&spec.frame, &record[2]).map_err(err)?;
        let Some(certainty) = CertaintyLevel::from_token(&record[3]) else {
            return Err(err(format!(
                "unknown certainty {:?} (expected N1..N5)",
                &record[3]
            )));
        };
        let response_time_s = parse_time(&record[4], "response_time_s").map_err(err)?;
        answers.push(ContributorAnswer {
            contributor_id,
            question_id,
            answer,
            certainty,
            response_time_s,
        });
    }
    Ok(answers)
}

pub(super) fn write_csv(
    path: &Path,
    header: &[&str],
    rows: Vec<Vec<String>>,
) -> Result<(), LoadError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io_err = |source: csv::Error| LoadError::Csv {
        path: path.to_path_buf(),
        source,
    };
    writer.write_record(header).map_err(io_err)?;
    for row in rows {
        writer.write_record(&row).map_err(io_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| io_err(csv::Error::from(e.into_error())))?;
    let content = String::from_utf8(bytes).expect("csv output is utf-8");
    write_atomic(path, &content).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes answers sorted by (contributor, question) so equal datasets
/// produce byte-identical files. Question frames resolve the subsets back
/// to `|`-joined labels.
pub fn write_answers(
    path: &Path,
    answers: &[ContributorAnswer],
    questions: &QuestionMap,
) -> Result<(), LoadError> {
    let mut ordered: Vec<&ContributorAnswer> = answers.iter().collect();
    ordered.sort_by(|a, b| {
        (&a.contributor_id, &a.question_id).cmp(&(&b.contributor_id, &b.question_id))
    });
    let mut rows = Vec::with_capacity(ordered.len());
    for a in ordered {
        let spec = questions
            .get(&a.question_id)
            .ok_or_else(|| LoadError::UnknownQuestion(a.question_id.clone()))?;
        rows.push(vec![
            a.contributor_id.clone(),
            a.question_id.clone(),
            render_subset(&spec.frame, a.answer),
            a.certainty.token().to_string(),
            fmt_f64(a.response_time_s),
        ]);
    }
    write_csv(path, &ANSWERS_HEADER, rows)
}

/// Writes the question map in key order.
pub fn write_questions(path: &Path, questions: &QuestionMap) -> Result<(), LoadError> {
    let rows = questions
        .values()
        .map(|q| {
            vec![
                q.question_id.clone(),
                q.frame.len().to_string(),
                fmt_f64(q.theoretical_time_s),
                if q.is_ground_truth() { "true" } else { "false" }.to_string(),
                q.expected_answer
                    .map_or(String::new(), |m| render_subset(&q.frame, m)),
            ]
        })
        .collect();
    write_csv(path, &QUESTIONS_HEADER, rows)
}
