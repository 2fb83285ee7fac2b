//! The run configuration file (TOML, keys mirroring the CLI flags) and its
//! resolution order: built-in defaults, then file values, then flag values.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::experiment::{ArchetypeParams, CrowdScenario};
use crate::profile::{AlphaFn, AlphaTable, CertaintyLevel, QuestionFilter};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{}: {source}", .path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Parse errors carry the offending key path and span.
    #[error("{}: {source}", .path.display())]
    Parse {
        path: PathBuf,
        #[source]
        source: Box<toml::de::Error>,
    },

    #[error("config field {field}: {reason}")]
    Field { field: String, reason: String },
}

fn field_error(field: impl Into<String>, reason: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        field: field.into(),
        reason: reason.into(),
    }
}

/// The file as written: every key optional, unknown keys rejected.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub answers: Option<PathBuf>,
    pub questions: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub sigma: Option<f64>,
    pub beta: Option<f64>,
    pub cte: Option<f64>,
    pub alpha_fn: Option<String>,
    pub filter: Option<String>,
    pub seed: Option<u64>,
    pub alphas: Option<AlphaSection>,
    pub scenario: Option<ScenarioSection>,
}

/// Per-level overrides of the answer-weight table.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaSection {
    pub n1: Option<f64>,
    pub n2: Option<f64>,
    pub n3: Option<f64>,
    pub n4: Option<f64>,
    pub n5: Option<f64>,
}

/// Scenario overrides; archetype tables replace the default wholesale when
/// present. The generator seed is the top-level `seed` key.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub n_contributors: Option<usize>,
    pub n_hits: Option<usize>,
    pub questions_per_hit: Option<usize>,
    pub ground_truth_per_hit: Option<usize>,
    pub frame_size: Option<usize>,
    pub expert_share: Option<f64>,
    pub unqualified_share: Option<f64>,
    pub spammer_share: Option<f64>,
    pub expert: Option<ArchetypeParams>,
    pub unqualified: Option<ArchetypeParams>,
    pub spammer: Option<ArchetypeParams>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| ConfigError::Parse {
            path: path.to_path_buf(),
            source: Box::new(source),
        })
    }
}

/// Values taken from command-line flags; they win over the file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub answers: Option<PathBuf>,
    pub questions: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub sigma: Option<f64>,
    pub beta: Option<f64>,
    pub cte: Option<f64>,
    pub filter: Option<QuestionFilter>,
    pub seed: Option<u64>,
}

/// A fully resolved, range-checked run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub answers: Option<PathBuf>,
    pub questions: Option<PathBuf>,
    pub output: PathBuf,
    pub sigma: f64,
    pub beta: f64,
    pub cte: f64,
    pub alphas: AlphaTable,
    pub alpha_fn: AlphaFn,
    pub filter: QuestionFilter,
    pub scenario: CrowdScenario,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            answers: None,
            questions: None,
            output: PathBuf::from("out"),
            sigma: 0.5,
            beta: 0.5,
            cte: 0.05,
            alphas: AlphaTable::default(),
            alpha_fn: AlphaFn::default(),
            filter: QuestionFilter::All,
            scenario: CrowdScenario::default(),
        }
    }
}

fn check_range(field: &str, value: f64, lo: f64, hi: f64, open: bool) -> Result<(), ConfigError> {
    let inside = if open {
        value > lo && value < hi
    } else {
        value >= lo && value <= hi
    };
    if !value.is_finite() || !inside {
        let bracket = if open { ('(', ')') } else { ('[', ']') };
        return Err(field_error(
            field,
            format!(
                "must be in {}{lo},{hi}{}, got {value}",
                bracket.0, bracket.1
            ),
        ));
    }
    Ok(())
}

impl RunConfig {
    /// Layers flag values over file values over defaults, then range-checks
    /// everything. Errors name the offending field.
    pub fn resolve(file: &ConfigFile, flags: &Overrides) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();

        let pick = |flag: &Option<PathBuf>, file: &Option<PathBuf>| {
            flag.as_ref().or(file.as_ref()).cloned()
        };
        cfg.answers = pick(&flags.answers, &file.answers);
        cfg.questions = pick(&flags.questions, &file.questions);
        if let Some(out) = pick(&flags.output, &file.output) {
            cfg.output = out;
        }

        cfg.sigma = flags.sigma.or(file.sigma).unwrap_or(cfg.sigma);
        check_range("sigma", cfg.sigma, 0.0, 1.0, true)?;
        cfg.beta = flags.beta.or(file.beta).unwrap_or(cfg.beta);
        check_range("beta", cfg.beta, 0.0, 1.0, false)?;
        cfg.cte = flags.cte.or(file.cte).unwrap_or(cfg.cte);
        if !cfg.cte.is_finite() || !(0.0..0.5).contains(&cfg.cte) {
            return Err(field_error(
                "cte",
                format!("must be in [0,0.5), got {}", cfg.cte),
            ));
        }

        if let Some(name) = &file.alpha_fn {
            cfg.alpha_fn = AlphaFn::from_name(name)
                .ok_or_else(|| field_error("alpha_fn", format!("unknown variant {name:?}")))?;
        }
        if let Some(filter) = flags.filter {
            cfg.filter = filter;
        } else if let Some(name) = &file.filter {
            cfg.filter = QuestionFilter::from_name(name).ok_or_else(|| {
                field_error(
                    "filter",
                    format!("unknown filter {name:?} (all, ground-truth-only, test-only)"),
                )
            })?;
        }

        if let Some(section) = &file.alphas {
            let mut table = [0.0; 5];
            let overrides = [section.n1, section.n2, section.n3, section.n4, section.n5];
            for (level, over) in CertaintyLevel::ALL.into_iter().zip(overrides) {
                let value = over.unwrap_or(cfg.alphas.alpha(level));
                check_range(
                    &format!("alphas.{}", level.token().to_lowercase()),
                    value,
                    0.0,
                    1.0,
                    true,
                )?;
                table[level.index()] = value;
            }
            cfg.alphas =
                AlphaTable::new(table).map_err(|e| field_error("alphas", e.to_string()))?;
        }

        cfg.scenario.seed = flags.seed.or(file.seed).unwrap_or(cfg.scenario.seed);
        if let Some(s) = &file.scenario {
            let sc = &mut cfg.scenario;
            macro_rules! merge {
                ($($field:ident),+) => {
                    $(if let Some(v) = &s.$field { sc.$field = v.clone(); })+
                };
            }
            merge!(
                n_contributors,
                n_hits,
                questions_per_hit,
                ground_truth_per_hit,
                frame_size,
                expert_share,
                unqualified_share,
                spammer_share,
                expert,
                unqualified,
                spammer
            );
            sc.validate()
                .map_err(|e| field_error("scenario", e.to_string()))?;
        }

        Ok(cfg)
    }
}
