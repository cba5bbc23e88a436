use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SortError {
    #[error("operation requires a nonempty segment")]
    EmptySegment,
    #[error("key spread collapsed to zero in floating point although keys differ")]
    DegenerateSpread,
    #[error("key range {range} is not below the counting-sort limit {limit}")]
    RangeTooWide { range: i128, limit: usize },
    #[error("invalid sort configuration: {0}")]
    InvalidConfig(&'static str),
}
