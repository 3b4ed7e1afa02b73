use std::fmt;

use crate::designcore::Point;

/// Errors raised by constructors, parsers and pipeline drivers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid block {block:?}: {reason}")]
    InvalidBlock { block: Vec<Point>, reason: String },
    #[error("parameter mismatch: {0}")]
    Mismatch(String),
    #[error("input failed verification: {0}")]
    Unverified(#[from] Violation),
    #[error("unknown seed {0:?}")]
    UnknownSeed(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("search failed; best energy {best_energy}")]
    SearchFailed { best_energy: u64 },
    #[error("infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// The first defect found by a verifier, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    /// Parameters that cannot describe the claimed object at all.
    Parameters(String),
    BlockCount {
        expected: u64,
        found: u64,
    },
    /// `subset` lies in `count` blocks (or systems) instead of `expected`.
    Coverage {
        subset: Vec<Point>,
        count: u64,
        expected: u64,
    },
    SystemCount {
        expected: u64,
        found: u64,
    },
    /// Member `index` of a large set failed on its own.
    System {
        index: usize,
        inner: Box<Violation>,
    },
    NotTransversal {
        block: Vec<Point>,
    },
    Shape(String),
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: Point,
    },
    RepeatedEntry {
        row: usize,
    },
    /// The column set `columns` carries `tuple` `count` times instead of `expected`.
    ArrayTuple {
        columns: Vec<usize>,
        tuple: Vec<Point>,
        count: u64,
        expected: u64,
    },
    LatinLine {
        line: &'static str,
        index: usize,
    },
    NotMatching {
        factor: usize,
    },
    EdgeCount {
        edge: (Point, Point),
        count: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Parameters(m) => write!(f, "bad parameters: {m}"),
            Violation::BlockCount { expected, found } => {
                write!(f, "block count {found}, expected {expected}")
            }
            Violation::Coverage { subset, count, expected } => {
                write!(f, "subset {} covered {count} times, expected {expected}", fmt_set(subset))
            }
            Violation::SystemCount { expected, found } => {
                write!(f, "system count {found}, expected {expected}")
            }
            Violation::System { index, inner } => write!(f, "system {index}: {inner}"),
            Violation::NotTransversal { block } => {
                write!(f, "block {} meets a group twice", fmt_set(block))
            }
            Violation::Shape(m) => write!(f, "shape: {m}"),
            Violation::EntryOutOfRange { row, col, value } => {
                write!(f, "entry {value} at row {row}, column {col} out of range")
            }
            Violation::RepeatedEntry { row } => write!(f, "row {row} repeats an entry"),
            Violation::ArrayTuple { columns, tuple, count, expected } => {
                write!(f, "columns {columns:?} carry {tuple:?} {count} times, expected {expected}")
            }
            Violation::LatinLine { line, index } => {
                write!(f, "{line} {index} is not a permutation")
            }
            Violation::NotMatching { factor } => {
                write!(f, "factor {factor} is not a perfect matching")
            }
            Violation::EdgeCount { edge, count } => {
                write!(f, "edge {{{},{}}} appears {count} times", edge.0, edge.1)
            }
        }
    }
}

fn fmt_set(s: &[Point]) -> String {
    let inner: Vec<String> = s.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}
