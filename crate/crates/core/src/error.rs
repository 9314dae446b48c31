use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order {0} is outside the supported range 1..=62")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("adjacency rows are not symmetric at {0}-{1}")]
    Asymmetric(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("malformed graph6 on line {line}: {reason}")]
    Graph6Line { line: usize, reason: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("closed form for {family} at n = {n} is not an exact multiple of {divisor}")]
    InexactDivision {
        family: &'static str,
        n: u64,
        divisor: u64,
    },
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("empty stream")]
    EmptyStream,
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
