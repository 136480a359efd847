//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("line count mismatch: source has {src} lines, target has {tgt}")]
    LineCountMismatch { src: usize, tgt: usize },

    #[error("invalid UTF-8 in {path} at line {line}")]
    InvalidUtf8 { path: String, line: usize },

    #[error("CoNLL-U parse error at line {line}: {message}")]
    Conllu { line: usize, message: String },

    #[error("parse count mismatch: {segments} segments but {parses} parsed sentences")]
    ParseCountMismatch { segments: usize, parses: usize },

    #[error("NER sidecar references line {line} but corpus has {total} segments")]
    NerLineOutOfRange { line: usize, total: usize },

    #[error("name list is empty")]
    EmptyNameList,

    #[error("sample size {n} exceeds population size {population}")]
    SampleTooLarge { n: usize, population: usize },

    #[error("annotation sheets have different lengths: {a} vs {b}")]
    MarkLengthMismatch { a: usize, b: usize },

    #[error("kappa is undefined: both annotators are constant and identical")]
    KappaUndefined,

    #[error("sheet item {index} is unmarked")]
    UnmarkedItem { index: usize },

    #[error("malformed sheet row at line {line}: {message}")]
    SheetFormat { line: usize, message: String },

    #[error("report total must be positive")]
    ZeroTotal,

    #[error("report total {total} is smaller than the {labels} labelled segments")]
    TotalTooSmall { total: usize, labels: usize },

    #[error("label/source misalignment: {labels} labels for {lines} source lines")]
    TagMisalignment { labels: usize, lines: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
