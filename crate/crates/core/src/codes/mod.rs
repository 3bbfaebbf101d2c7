//! Cyclic codes built from dual idempotents: construction, the idempotent
//! search, redundant parity-check matrices and weight analysis.

mod cyclic;
mod matrix;
mod search;
mod weights;

pub use cyclic::{bch_bound, CodeContext, CyclicCode};
pub use matrix::{gf2_rank, ParityCheckMatrix};
pub use search::{candidate_dual_idempotent, combination_count, search_mdpc, SearchOutcome};
pub use weights::{
    enumerate_span, macwilliams_transform, Enumeration, WeightDistribution, DEFAULT_BUDGET,
};

pub(crate) use weights::count_as_f64;
