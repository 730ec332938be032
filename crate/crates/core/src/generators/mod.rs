//! Test corpora and the construction showing the `ψ` constant is sharp.

mod binomial;
mod enumerate;
mod example;
mod random;

use thiserror::Error;

use crate::setfamily::FamilyError;

pub use binomial::{binomial, binomial_row, log2_big, ratio_to_f64, tail_sum};
pub use enumerate::{
    count_union_closed, enumerate_union_closed, UnionClosedFamilies, MAX_ENUMERATION_UNIVERSE,
};
pub use example::{
    build_example, example_stats, ExampleFamily, ExampleMode, ExampleOutput, ExampleSpec,
    ExampleStats, Subset, CONFIDENCE_Z, DEFAULT_MATERIALIZE_CAP, MAX_EXAMPLE_UNIVERSE,
    SAMPLE_SHARDS,
};
pub use random::{fuzz_corpus, random_families, FamilyKind, RandomFamilies};

#[derive(Debug, Error, PartialEq)]
pub enum GeneratorError {
    #[error("degenerate example over [{n}]: need 0 < k < m <= n, got k={k}, m={m}")]
    Degenerate { n: u32, k: u32, m: u32 },
    #[error("family of {size} sets exceeds the materialization cap of {cap}")]
    Cap { size: String, cap: u64 },
    #[error("universe size {n} exceeds the limit {limit}")]
    UniverseTooLarge { n: u32, limit: u32 },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}
