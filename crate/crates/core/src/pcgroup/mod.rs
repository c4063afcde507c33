//! Finite p-groups via power-commutator presentations.

mod cayley;
mod collect;
mod consistency;
pub mod dsl;
mod ops;
mod presentation;
mod structure;
mod subgroup;

use thiserror::Error;

pub use cayley::{cayley_table, cayley_table_with_cap, CayleyTable, DEFAULT_TABLE_CAP};
pub use consistency::{check_consistency, ConsistencyReport, OverlapFailure};
pub use ops::{central_quotient, direct_product, iso_witness_check};
pub use presentation::{NormalWord, PcBuilder, PcPresentation, RawWord, Tail};
pub use structure::{abelianization, derived_subgroup, nilpotency_class, structure_report, StructureReport};
pub use subgroup::{Refined, Subgroup};

pub(crate) use collect::TailSink;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PcError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("generator `{0}` has an invalid relative order")]
    BadRelativeOrder(String),
    #[error("{0} given twice")]
    DuplicateRelation(String),
    #[error("{0}: tail must use only generators of higher index")]
    TailOrder(String),
    #[error("presentation is inconsistent: overlap {overlap} collects to {left} and {right}")]
    Inconsistent {
        overlap: String,
        left: String,
        right: String,
    },
    #[error("primes differ: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("subgroup is not central")]
    NotCentral,
    #[error("group of order {prime}^{exponent} exceeds the cap of {cap} elements")]
    TooLarge { prime: u64, exponent: u32, cap: u64 },
    #[error("orders differ: {src} vs {dst}")]
    OrderMismatch { src: String, dst: String },
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("word has {got} exponents, presentation has {expected} generators")]
    WordLength { expected: usize, got: usize },
}

impl PcPresentation {
    /// Builds the error for the first failing overlap, if any.
    pub fn ensure_consistent(&self) -> Result<(), PcError> {
        match check_consistency(self).first_failure() {
            None => Ok(()),
            Some(f) => Err(PcError::Inconsistent {
                overlap: f.overlap.clone(),
                left: self.format_word(&f.left),
                right: self.format_word(&f.right),
            }),
        }
    }
}
