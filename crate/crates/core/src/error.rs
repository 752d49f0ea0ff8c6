use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("data length {len} does not match shape {rows}x{cols}")]
    DataLength {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("dimensions must be positive, got {rows}x{cols}")]
    EmptyShape { rows: usize, cols: usize },
    #[error("cannot drop the last column of a matrix with {cols} column(s)")]
    NoColumnToDrop { cols: usize },
    #[error("invalid network spec: {0}")]
    InvalidSpec(String),
    #[error("layer count mismatch: network has {expected} layer(s), got {found}")]
    LayerCount { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("non-finite loss {value} at epoch {epoch}, sample {sample}")]
    NonFiniteLoss {
        epoch: usize,
        sample: usize,
        value: f64,
    },
    #[error("unknown {what} `{name}`")]
    UnknownName { what: &'static str, name: String },
}
