//! Exact measure-algebra combinatorics over finite Cantor cubes.
//!
//! * [`cube`]: clopen sets, exact dyadic measures, cofactors and projections.
//! * [`gapcore`]: concrete pregaps, the `K`/`L^k` partitions, Δ-systems,
//!   uniformization and random-subset names.
//! * [`chaincond`]: the correlation inequality for disjoint independent
//!   pairs and chain-condition extractors.
//! * [`construction`]: the explicit names, tower and extended names, the
//!   continuous-representative procedure and the quantitative verifiers.
//! * [`report`]: exact check records shared by the verifiers.
//! * [`souslin`]: Souslin instances, pair evaluation and the two pair finders.

pub mod chaincond;
pub mod construction;
pub mod cube;
pub mod error;
pub mod gapcore;
pub mod report;
pub mod souslin;

pub use error::{Error, Result};
