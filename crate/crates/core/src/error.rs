use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("not a group: no identity element")]
    NoIdentity,
    #[error("not a group: element {element} has no inverse")]
    MissingInverse { element: usize },
    #[error("not a group: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {index} is not a valid permutation: {reason}")]
    InvalidPermutation { index: usize, reason: String },
    #[error("permutation closure exceeds the order cap of {cap}")]
    ClosureTooLarge { cap: usize },
    #[error("map is not an automorphism")]
    NotAnAutomorphism,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unsupported group spec {spec}: {reason}")]
    UnsupportedSpec { spec: String, reason: String },
    #[error("cannot parse group spec {0:?}")]
    BadSpecSyntax(String),
    #[error("catalog parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("catalog version {0} is not supported (expected 1)")]
    UnsupportedVersion(u64),
    #[error("catalog record {record}: {source}")]
    InvalidRecord {
        record: usize,
        #[source]
        source: GroupError,
    },
    #[error("catalog record {record}: declared order {declared}, generators give {actual}")]
    OrderMismatch {
        record: usize,
        declared: usize,
        actual: usize,
    },
    #[error("catalog record {record}: duplicate group {order}:{id}")]
    Duplicate {
        record: usize,
        order: usize,
        id: u32,
    },
    #[error("group {order}:{id} is not in the catalog")]
    UnknownExternal { order: usize, id: u32 },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("genus {0} is below 2")]
    GenusTooSmall(u64),
    #[error("signature needs at least three periods, got {0}")]
    TooFewPeriods(usize),
    #[error("period {0} is below 2")]
    PeriodTooSmall(u32),
    #[error("periods must be nondecreasing")]
    NotSorted,
    #[error("signature is not hyperbolic")]
    NotHyperbolic,
    #[error("cannot parse signature {0:?}; expected `0;m1,m2,...`")]
    Syntax(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("move index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("gamma move at position {position} crosses periods {left} and {right}")]
    IllegalGamma {
        position: usize,
        left: u32,
        right: u32,
    },
    #[error("move {mv} sent vector {from:?} outside the epimorphism set")]
    OrbitEscape { mv: String, from: Vec<u16> },
}

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed census file {path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("census schema version {found} does not match expected {expected}")]
    SchemaVersion { found: u64, expected: u64 },
}
