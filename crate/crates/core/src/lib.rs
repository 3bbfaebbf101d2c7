//! Moderate-density parity-check (MDPC) cyclic codes built from dual
//! idempotents, decoded with belief propagation over automorphism-permuted
//! inputs.
//!
//! ```
//! use mdpc::{CodeContext, CyclicCode, BinaryPolynomial};
//!
//! let ctx = CodeContext::new(7)?;
//! let idual = BinaryPolynomial::from_exponents([6, 5, 3, 0]);
//! let code = CyclicCode::from_dual_idempotent(&idual, &ctx)?;
//! assert_eq!((code.n(), code.k(), code.bch_bound()), (7, 4, 3));
//! # Ok::<(), mdpc::Error>(())
//! ```

pub mod autgroup;
pub mod bounds;
pub mod channel;
pub mod codes;
pub mod cyclotomic;
pub mod decoder;
mod error;
pub mod gf2poly;
pub mod gfield;
pub mod io;
pub mod simulator;

pub use autgroup::{AutParams, Permutation};
pub use bounds::{q_function, union_bound, BoundCurve, BoundPoint};
pub use channel::ChannelConfig;
pub use codes::{
    search_mdpc, CodeContext, CyclicCode, Enumeration, ParityCheckMatrix, SearchOutcome,
    WeightDistribution,
};
pub use cyclotomic::CosetTable;
pub use decoder::{AdConfig, AdDecoder, BpDecoder, DecodeOutcome, LmsMetric, TannerGraph};
pub use error::{Error, Result};
pub use gf2poly::BinaryPolynomial;
pub use gfield::FieldContext;
pub use io::CodeSpec;
pub use simulator::{EbnoGrid, SimulationPlan, SimulationRecord, StopRule};
