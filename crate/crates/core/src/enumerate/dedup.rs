use std::collections::BTreeSet;

use crate::input::InputSet;
use crate::pool::{BoundedPool, RunMetrics};
use crate::ranked::RankedSubset;
use crate::shifts::{incremental_children_all, mandatory_static_children, IncrementalEdges};
use crate::subset::{BitPattern, SubsetPositions};
use crate::weight::Weight;

use super::{check_k, subset_count, EnumError, Enumerator};

/// What happens to a label in the seen-set once its subset is extracted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeenPolicy {
    /// Labels stay for the whole run. A subset can never be inserted twice.
    RetainExtracted,
    /// Labels are deleted on extraction. With equal sums a child can be
    /// extracted before its second parent, which then inserts it again and
    /// the subset is reported twice.
    DeleteOnExtract,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DedupOptions {
    pub edges: IncrementalEdges,
    pub seen: SeenPolicy,
    /// Discard pool maxima while more than `k - q` candidates remain.
    pub prune: bool,
}

impl Default for DedupOptions {
    fn default() -> Self {
        DedupOptions {
            edges: IncrementalEdges::ModifiedMandatory,
            seen: SeenPolicy::RetainExtracted,
            prune: true,
        }
    }
}

/// Best-first search over a multi-parent subset graph, with an ordered
/// seen-set guarding pool insertions.
///
/// Children of a subset are its mandatory static one shifts plus its
/// incremental one shifts under the chosen edge set. Both are computed from
/// the shift definitions, not from cursors.
pub struct DedupHeap<'a, W: Weight> {
    input: &'a InputSet<W>,
    k: u64,
    emitted: u64,
    options: DedupOptions,
    pool: BoundedPool<SubsetPositions, W>,
    seen: BTreeSet<BitPattern>,
    duplicates_skipped: u64,
}

impl<'a, W: Weight> DedupHeap<'a, W> {
    pub fn new(input: &'a InputSet<W>, k: u64, options: DedupOptions) -> Result<Self, EnumError> {
        check_k(k)?;
        let root = SubsetPositions::from_sorted_unchecked(vec![1]);
        let mut seen = BTreeSet::new();
        seen.insert(root.to_bits(input.len()));
        let mut pool = BoundedPool::new();
        pool.insert(root, input.value(1));
        Ok(DedupHeap {
            input,
            k,
            emitted: 0,
            options,
            pool,
            seen,
            duplicates_skipped: 0,
        })
    }

    /// Children rejected because their label was already in the seen-set.
    pub fn duplicates_skipped(&self) -> u64 {
        self.duplicates_skipped
    }

    pub fn options(&self) -> DedupOptions {
        self.options
    }
}

impl<W: Weight> Iterator for DedupHeap<'_, W> {
    type Item = RankedSubset<W>;

    fn next(&mut self) -> Option<RankedSubset<W>> {
        if self.emitted == self.k {
            return None;
        }
        let (sum, subset) = self.pool.extract_min()?;
        self.emitted += 1;
        let q = self.emitted;
        let n = self.input.len();

        if self.options.seen == SeenPolicy::DeleteOnExtract {
            self.seen.remove(&subset.to_bits(n));
        }

        let statics = mandatory_static_children(&subset, n);
        let incrementals = incremental_children_all(&subset, n, self.options.edges.kind());
        for child in statics.into_iter().chain(incrementals) {
            if self.seen.insert(child.to_bits(n)) {
                let key = self.input.sum_of(child.as_slice());
                self.pool.insert(child, key);
            } else {
                self.duplicates_skipped += 1;
            }
        }
        if self.options.prune {
            while self.pool.len() as u64 > self.k - q {
                self.pool.prune_max();
            }
        }

        Some(RankedSubset {
            rank: q,
            sum,
            positions: Some(subset),
            delta: None,
        })
    }
}

impl<W: Weight> Enumerator<W> for DedupHeap<'_, W> {
    fn metrics(&self) -> RunMetrics {
        self.pool.metrics()
    }

    fn truncated(&self) -> bool {
        self.k > subset_count(self.input.len())
    }

    fn requested(&self) -> u64 {
        self.k
    }
}
