use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants fall into three families which the CLI maps to distinct exit
/// codes: domain errors, resource ceilings and internal inconsistencies.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: malformed graph line `{text}`")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex index {index} out of range 1..={max}")]
    IndexOutOfRange { line: usize, index: usize, max: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("malformed configuration `{0}`")]
    MalformedConfiguration(String),
    #[error("configuration has {found} stacks but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("malformed orientation `{0}` (expected a string over R, L, F)")]
    MalformedOrientation(String),
    #[error("orientation has {found} edges but the path needs {expected}")]
    OrientationLength { expected: usize, found: usize },
    #[error("graph is not a path in standard v_1..v_n order")]
    NotAPath,
    #[error("vertex index {index} out of range 1..={n}")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("edge index {index} out of range 1..={max}")]
    EdgeOutOfRange { index: usize, max: usize },
    #[error("stack size overflow")]
    StackOverflow,
    #[error("count overflow at n = {n}")]
    CountOverflow { n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("period-not-found: no repeat within {max_steps} steps")]
    PeriodNotFound { max_steps: usize },
    #[error("illegal-orientation: {0}")]
    IllegalOrientation(String),
    #[error("illegal-local-pattern at v_{vertex}: {pattern}")]
    IllegalLocalPattern { vertex: usize, pattern: String },
    #[error("not-an-agreeing-pair at edges e_{} and e_{}", .index - 1, .index)]
    NotAnAgreeingPair { index: usize },

    #[error("resource ceiling exceeded: {0}")]
    Ceiling(String),
    #[error("window-not-stabilized: counts {counts:?} for windows {first_window}..={last_window}")]
    WindowNotStabilized {
        first_window: i64,
        last_window: i64,
        counts: Vec<u64>,
    },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_ceiling(&self) -> bool {
        matches!(self, Error::Ceiling(_) | Error::WindowNotStabilized { .. })
    }
}
