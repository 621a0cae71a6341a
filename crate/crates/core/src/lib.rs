//! Streaming enumeration of the k smallest-sum subsets of a multiset of
//! non-negative numbers.
//!
//! Values are sorted once; a subset is a set of 1-based positions into the
//! sorted values. Every enumerator emits subsets one at a time in
//! non-decreasing order of sum, with rank `1..=k`.
//!
//! ```
//! use topk_subsets::{load_input, topk, Variant};
//!
//! let input = load_input::<i64>("3 7 12 14 25 45 51").unwrap();
//! let top: Vec<(i64, String)> = topk(&input, 4, Variant::OnDemandBitVec)
//!     .unwrap()
//!     .map(|s| (s.sum, s.positions.unwrap().to_string()))
//!     .collect();
//! assert_eq!(top, [(3, "1".into()), (7, "2".into()), (10, "1,2".into()), (12, "3".into())]);
//! ```
//!
//! The cursor-only enumerator reports deltas instead of positions:
//!
//! ```
//! use topk_subsets::{expand_deltas, load_input, topk, Variant};
//!
//! let input = load_input::<i64>("1 2 4 8").unwrap();
//! let stream = topk(&input, 6, Variant::OnDemandCompact).unwrap();
//! let sixth = expand_deltas(stream).last().unwrap().unwrap();
//! assert_eq!(sixth.positions.unwrap().as_slice(), &[2, 3]);
//! ```

pub mod bench;
pub mod dag;
pub mod dot;
pub mod enumerate;
pub mod input;
pub mod oracle;
pub mod pool;
pub mod ranked;
pub mod shifts;
pub mod subset;
pub mod verify;
pub mod weight;

pub use enumerate::{drain, subset_count, topk, EnumError, Enumerator, RunSummary, TopK, Variant};
pub use input::{load_input, read_input, InputError, InputSet};
pub use pool::RunMetrics;
pub use ranked::{expand_deltas, Delta, DeltaError, RankedSubset};
pub use shifts::IncrementalEdges;
pub use subset::{BitPattern, Cursors, SubsetPositions};
pub use weight::{Mode, Weight};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ranking.md")]
    mod ranking {}
    #[doc = include_str!("../../../book/src/shifts.md")]
    mod shifts {}
    #[doc = include_str!("../../../book/src/final-dag.md")]
    mod final_dag {}
    #[doc = include_str!("../../../book/src/compact.md")]
    mod compact {}
    #[doc = include_str!("../../../book/src/pool.md")]
    mod pool {}
    #[doc = include_str!("../../../book/src/benchmarks.md")]
    mod benchmarks {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
