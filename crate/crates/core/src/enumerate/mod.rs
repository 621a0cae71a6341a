//! Streaming top-k enumerators.
//!
//! All four enumerators are iterators over [`RankedSubset`]: each call to
//! `next` performs one extraction, so the q-th record is available before
//! the (q+1)-th extraction starts. They share the same contract: emit
//! `min(k, 2^n - 1)` distinct subsets in non-decreasing order of sum, then
//! stop.
//!
//! | variant | children per step | subsets in output |
//! |---|---|---|
//! | [`Baseline`] | replace-max and extend-max, always both | positions |
//! | [`DedupHeap`] | static pair plus incremental edges, filtered through a seen-set | positions |
//! | [`OnDemandBitVec`] | final DAG rules on a stored bit pattern | positions, decoded per emission |
//! | [`OnDemandCompact`] | final DAG rules on cursors only | deltas |

mod baseline;
mod bitvec;
mod compact;
mod dedup;

use std::error::Error;
use std::fmt;
use std::time::Instant;

pub use baseline::{baseline_children, Baseline};
pub use bitvec::OnDemandBitVec;
pub use compact::OnDemandCompact;
pub use dedup::{DedupHeap, DedupOptions, SeenPolicy};

use crate::input::InputSet;
use crate::pool::RunMetrics;
use crate::ranked::RankedSubset;
use crate::shifts::IncrementalEdges;
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Baseline,
    DedupHeap(IncrementalEdges),
    OnDemandBitVec,
    OnDemandCompact,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Baseline,
        Variant::DedupHeap(IncrementalEdges::ModifiedMandatory),
        Variant::OnDemandBitVec,
        Variant::OnDemandCompact,
    ];

    /// Label used in CSV output and reports.
    pub fn label(&self) -> String {
        match self {
            Variant::Baseline => "baseline".into(),
            Variant::DedupHeap(e) => format!("dedup-{}", e.name()),
            Variant::OnDemandBitVec => "bitvec".into(),
            Variant::OnDemandCompact => "compact".into(),
        }
    }

    /// Parses a command-line algorithm name. `dedup` takes `edges`.
    pub fn from_name(name: &str, edges: IncrementalEdges) -> Option<Self> {
        match name {
            "baseline" => Some(Variant::Baseline),
            "dedup" => Some(Variant::DedupHeap(edges)),
            "bitvec" => Some(Variant::OnDemandBitVec),
            "compact" => Some(Variant::OnDemandCompact),
            other => other
                .strip_prefix("dedup-")
                .and_then(IncrementalEdges::from_name)
                .map(Variant::DedupHeap),
        }
    }

    /// Whether records carry explicit positions (otherwise only deltas).
    pub fn reports_positions(&self) -> bool {
        !matches!(self, Variant::OnDemandCompact)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumError {
    ZeroK,
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::ZeroK => write!(f, "k must be at least 1"),
        }
    }
}

impl Error for EnumError {}

/// Number of non-empty subsets of `n` items, saturating at `u64::MAX`.
pub fn subset_count(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Common surface of the enumerators beyond `Iterator`.
pub trait Enumerator<W: Weight>: Iterator<Item = RankedSubset<W>> {
    /// Pool counters so far. `elapsed` is left at zero; see [`drain`].
    fn metrics(&self) -> RunMetrics;

    /// True when the requested k exceeds the number of non-empty subsets,
    /// so the stream ends early.
    fn truncated(&self) -> bool;

    fn requested(&self) -> u64;
}

/// Any of the four enumerators, chosen at run time.
pub enum TopK<'a, W: Weight> {
    Baseline(Baseline<'a, W>),
    Dedup(DedupHeap<'a, W>),
    BitVec(OnDemandBitVec<'a, W>),
    Compact(OnDemandCompact<'a, W>),
}

impl<W: Weight> Iterator for TopK<'_, W> {
    type Item = RankedSubset<W>;

    fn next(&mut self) -> Option<RankedSubset<W>> {
        match self {
            TopK::Baseline(e) => e.next(),
            TopK::Dedup(e) => e.next(),
            TopK::BitVec(e) => e.next(),
            TopK::Compact(e) => e.next(),
        }
    }
}

impl<W: Weight> Enumerator<W> for TopK<'_, W> {
    fn metrics(&self) -> RunMetrics {
        match self {
            TopK::Baseline(e) => e.metrics(),
            TopK::Dedup(e) => e.metrics(),
            TopK::BitVec(e) => e.metrics(),
            TopK::Compact(e) => e.metrics(),
        }
    }

    fn truncated(&self) -> bool {
        match self {
            TopK::Baseline(e) => e.truncated(),
            TopK::Dedup(e) => e.truncated(),
            TopK::BitVec(e) => e.truncated(),
            TopK::Compact(e) => e.truncated(),
        }
    }

    fn requested(&self) -> u64 {
        match self {
            TopK::Baseline(e) => e.requested(),
            TopK::Dedup(e) => e.requested(),
            TopK::BitVec(e) => e.requested(),
            TopK::Compact(e) => e.requested(),
        }
    }
}

/// Starts a top-k enumeration of `input` with the given variant.
///
/// `DedupHeap` runs with [`DedupOptions::default`]; construct
/// [`DedupHeap`] directly for other options.
///
/// ```
/// use topk_subsets::{load_input, topk, Variant};
///
/// let r = load_input::<i64>("1 2 3 4").unwrap();
/// let sums: Vec<i64> = topk(&r, 5, Variant::OnDemandCompact).unwrap().map(|s| s.sum).collect();
/// assert_eq!(sums, [1, 2, 3, 3, 4]);
/// ```
pub fn topk<W: Weight>(
    input: &InputSet<W>,
    k: u64,
    variant: Variant,
) -> Result<TopK<'_, W>, EnumError> {
    Ok(match variant {
        Variant::Baseline => TopK::Baseline(Baseline::new(input, k)?),
        Variant::DedupHeap(edges) => TopK::Dedup(DedupHeap::new(
            input,
            k,
            DedupOptions {
                edges,
                ..DedupOptions::default()
            },
        )?),
        Variant::OnDemandBitVec => TopK::BitVec(OnDemandBitVec::new(input, k)?),
        Variant::OnDemandCompact => TopK::Compact(OnDemandCompact::new(input, k)?),
    })
}

/// Result of [`drain`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunSummary {
    pub metrics: RunMetrics,
    pub reported: u64,
    pub truncated: bool,
}

/// Runs an enumerator to the end, handing each record to `sink`, and
/// records the wall time of the whole loop in `metrics.elapsed`.
pub fn drain<W, E, F>(mut enumerator: E, mut sink: F) -> RunSummary
where
    W: Weight,
    E: Enumerator<W>,
    F: FnMut(RankedSubset<W>),
{
    let start = Instant::now();
    let mut reported = 0;
    for item in enumerator.by_ref() {
        reported += 1;
        sink(item);
    }
    let mut metrics = enumerator.metrics();
    metrics.elapsed = start.elapsed();
    RunSummary {
        metrics,
        reported,
        truncated: enumerator.truncated(),
    }
}

pub(crate) fn check_k(k: u64) -> Result<(), EnumError> {
    if k == 0 {
        Err(EnumError::ZeroK)
    } else {
        Ok(())
    }
}
