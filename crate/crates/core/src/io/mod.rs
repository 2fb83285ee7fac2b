//! File formats and report emission: CSV datasets, the TOML run config,
//! and byte-stable report writers.

mod answers;
mod config;
mod report;
mod run;

pub use answers::{load_answers, load_questions, write_answers, write_questions, LoadError};
pub use config::{AlphaSection, ConfigError, ConfigFile, Overrides, RunConfig, ScenarioSection};
pub use report::{
    render_subset, write_evaluation, write_planted, write_profile_report, EVALUATION_FILES,
};
pub use run::{
    run_experiment, run_profile, summary_table, ExperimentOutput, ProfileOutput, RunError,
};

use std::fs;
use std::io::Write as _;
use std::path::Path;

/// Formats a float as plain decimal with at least nine significant digits,
/// keeping the shortest representation that parses back to the same value:
/// the shortest round-trip form is taken and zero-padded on the right when
/// it is shorter than nine digits. Padding zeros never changes the parsed
/// value, so round-trips stay exact.
pub fn fmt_f64(value: f64) -> String {
    if value == 0.0 {
        return "0.000000000".to_string();
    }
    let mut s = format!("{value}");
    debug_assert!(!s.contains(['e', 'E']), "float Display is never scientific");
    let significant = s
        .chars()
        .filter(|c| c.is_ascii_digit())
        .collect::<String>()
        .trim_start_matches('0')
        .len();
    if significant < 9 {
        if !s.contains('.') {
            s.push('.');
        }
        let zeros = 9 - significant;
        s.extend(std::iter::repeat_n('0', zeros));
    }
    s
}

/// Writes a file atomically: the content lands in a dot-prefixed temporary
/// sibling which is renamed over the target, so readers never observe a
/// half-written report.
pub fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let name = path
        .file_name()
        .ok_or_else(|| std::io::Error::other(format!("no file name in {}", path.display())))?;
    let tmp = match dir {
        Some(d) => d.join(format!(".{}.tmp", name.to_string_lossy())),
        None => std::path::PathBuf::from(format!(".{}.tmp", name.to_string_lossy())),
    };
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(content.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}
