use thiserror::Error;

/// Errors raised by the belief-function calculus.
#[derive(Debug, Error)]
pub enum BeliefError {
    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    /// A subset mask addresses bits outside the frame.
    #[error("mask {mask:#06x} is out of range for a frame of {size} labels")]
    MaskOutOfRange { mask: u16, size: usize },

    /// A focal element is not allowed where it was used (empty set, whole
    /// frame, or a label collision).
    #[error("invalid focal element: {0}")]
    InvalidFocal(String),

    /// A scalar argument fell outside its documented range.
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Masses do not sum to one within the construction tolerance.
    #[error("masses sum to {sum:.12}, expected 1 within {tol:e}")]
    NotNormalized { sum: f64, tol: f64 },

    /// Two mass functions that must share a frame do not.
    #[error("mass functions are defined on different frames")]
    FrameMismatch,

    /// A combination or average was asked for zero sources.
    #[error("combination needs at least one mass function")]
    EmptyCombination,

    /// The pignistic transform is undefined when all mass sits on the
    /// empty set.
    #[error("pignistic transform undefined: all mass on the empty set")]
    UndefinedTransform,

    /// Specificity needs a frame with at least two labels.
    #[error("specificity undefined on a single-label frame")]
    DegenerateFrame,
}

pub type Result<T> = std::result::Result<T, BeliefError>;
