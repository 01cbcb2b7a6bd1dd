use thiserror::Error;

/// Which of the three grid-diagram conditions failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// exactly one O per row and column
    I,
    /// at least one X per row and column
    II,
    /// no X sharing a square with an O (outside the extended exception)
    III,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Condition::I => "(i)",
            Condition::II => "(ii)",
            Condition::III => "(iii)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum GridError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("condition {cond} violated at {axis} {index}: {detail}")]
    Condition {
        cond: Condition,
        axis: &'static str,
        index: usize,
        detail: String,
    },

    #[error("diagram is not balanced: {0}")]
    Unbalanced(String),

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("inadmissible parameter: {0}")]
    Inadmissible(String),

    #[error("negative exponent {exponent} on rectangle rows {rows:?} cols {cols:?}: {hint}")]
    NegativeExponent {
        exponent: i64,
        rows: (usize, usize),
        cols: (usize, usize),
        hint: String,
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl GridError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            GridError::Syntax { .. }
            | GridError::Condition { .. }
            | GridError::Unbalanced(_)
            | GridError::IllegalMove(_)
            | GridError::Unsupported(_) => 1,
            GridError::Inadmissible(_) | GridError::NegativeExponent { .. } => 2,
            GridError::Invariant(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, GridError>;
