//! Non-isomorphic free trees and exhaustive searches over them.

mod canonical;
mod free;
mod search;
mod verify;

pub use canonical::{canonical_code, centers, CanonicalTree};
pub use free::{free_trees, free_trees_with_cap, level_sequence_tree, FreeTrees, DEFAULT_CAP, HARD_CAP};
pub use search::{
    extremal_search, extremal_search_with_cap, rank_trees, Execution, ExtremalReport, RankedTree, Statistic,
    TreeFilter, TIE_TOL,
};
pub use verify::{
    central_branch_count, ordering_chain, predicted_inertia, verify_inertia, verify_inertia_with_tol, verify_orderings,
    verify_prior_results, ChainMember, ClaimResult, InertiaFailure, InertiaReport, OrderingReport, PriorReport,
    AGREEMENT_TOL, CHAIN_MARGIN,
};

use thiserror::Error;

use crate::closed_forms::ClosedFormError;
use crate::families::FamilyError;
use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("order {n} exceeds the enumeration cap {cap}")]
    OrderCapExceeded { n: usize, cap: usize },
    #[error("order must be at least 1")]
    EmptyOrder,
    #[error("order {n} too small (needs n >= {min})")]
    OrderTooSmall { n: usize, min: usize },
    #[error("no tree of order {n} passes the filter")]
    NoCandidates { n: usize },
    #[error("unknown statistic `{0}` (expected xi1, xi2 or energy)")]
    UnknownStatistic(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
}
