//! Proof reduction for the intuitionistic systems: segments, cuts and rank,
//! proper and commutative contractions, the normalization loop, spines of
//! normal derivations, and a bounded search confirming consistency.

mod consistency;
mod contract;
pub mod fixtures;
mod normalize;
mod segments;
mod spine;

use thiserror::Error;

pub use consistency::{bounded_consistency, ConsistencyBounds, ConsistencyReport};
pub use contract::{contract_commutative, contract_proper, ContractionKind};
pub use normalize::{is_normal, normalize, reduce_once, Normalization, Step};
pub use segments::{cut_at, cuts, rank, segment_from, segments, Cut, Occurrence, Rank, Segment};
pub use spine::{decompose_all, spine_decompose, spines, Spine, SpineParts, SpineRole};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("not a redex at {0}")]
    NotARedex(String),
    #[error("no commutative contraction applies at {0}")]
    NotApplicable(String),
    #[error("rank did not decrease: {before} then {after}")]
    RankIncreased { before: Rank, after: Rank },
    #[error("derivation is not normal")]
    NotNormal,
    #[error("normalization is defined for intuitionistic systems only")]
    FlavorUnsupported,
    #[error("input derivation does not check: {0}")]
    Invalid(String),
    #[error("contraction produced an ill-formed derivation {0}")]
    Unsound(String),
    #[error("spine is out of order: {0}")]
    SpineOrder(String),
}
