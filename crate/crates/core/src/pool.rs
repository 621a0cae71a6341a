//! A double-ended candidate pool with instrumentation.
//!
//! Entries are ordered by `(key, insertion sequence)`, so equal keys come out
//! of [`BoundedPool::extract_min`] in insertion order. The backing structure
//! is a min-max heap: even levels hold minima of their subtrees, odd levels
//! maxima. Both ends are reachable in O(1) and removable in O(log n), so the
//! enumerators can cap the pool by discarding the current maximum.

use std::time::Duration;

use crate::weight::Weight;

/// Counters describing one enumeration run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunMetrics {
    pub total_insertions: u64,
    /// Largest logical size observed, sampled after every insertion.
    pub peak_size: u64,
    pub extractions: u64,
    pub prunes: u64,
    /// Wall time, filled in by whoever drives the run.
    pub elapsed: Duration,
}

/// Identifies an inserted entry: its insertion sequence number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Handle(pub u64);

/// Heap entry. Items live in a side table so moving entries stays cheap.
#[derive(Clone, Copy, Debug)]
struct Slot<K> {
    key: K,
    seq: u64,
    item: u32,
}

impl<K: Weight> Slot<K> {
    #[inline]
    fn rank(&self) -> u128 {
        (self.key.order_key() as u128) << 64 | self.seq as u128
    }

    #[inline]
    fn less(&self, other: &Self) -> bool {
        self.rank() < other.rank()
    }

    /// Whether `self` belongs above `other` on a level of the given kind.
    #[inline]
    fn above(&self, other: &Self, max_level: bool) -> bool {
        if max_level {
            other.less(self)
        } else {
            self.less(other)
        }
    }
}

#[derive(Debug)]
pub struct BoundedPool<T, K> {
    heap: Vec<Slot<K>>,
    items: Vec<Option<T>>,
    free: Vec<u32>,
    next_seq: u64,
    metrics: RunMetrics,
}

impl<T, K: Weight> Default for BoundedPool<T, K> {
    fn default() -> Self {
        Self::new()
    }
}

#[inline]
fn is_min_level(i: usize) -> bool {
    (usize::BITS - (i + 1).leading_zeros() - 1).is_multiple_of(2)
}

impl<T, K: Weight> BoundedPool<T, K> {
    pub fn new() -> Self {
        Self::with_capacity(0)
    }

    pub fn with_capacity(capacity: usize) -> Self {
        BoundedPool {
            heap: Vec::with_capacity(capacity),
            items: Vec::with_capacity(capacity),
            free: Vec::new(),
            next_seq: 0,
            metrics: RunMetrics::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn metrics(&self) -> RunMetrics {
        self.metrics
    }

    pub fn insert(&mut self, item: T, key: K) -> Handle {
        let seq = self.next_seq;
        self.next_seq += 1;
        let slot = match self.free.pop() {
            Some(s) => {
                self.items[s as usize] = Some(item);
                s
            }
            None => {
                self.items.push(Some(item));
                (self.items.len() - 1) as u32
            }
        };
        let entry = Slot {
            key,
            seq,
            item: slot,
        };
        self.heap.push(entry);
        self.bubble_up(self.heap.len() - 1, entry);
        self.metrics.total_insertions += 1;
        self.metrics.peak_size = self.metrics.peak_size.max(self.heap.len() as u64);
        Handle(seq)
    }

    pub fn peek_min(&self) -> Option<(&K, &T)> {
        self.heap.first().map(|e| self.view(e))
    }

    pub fn peek_max(&self) -> Option<(&K, &T)> {
        self.max_index().map(|i| self.view(&self.heap[i]))
    }

    fn view<'a>(&'a self, e: &'a Slot<K>) -> (&'a K, &'a T) {
        (
            &e.key,
            self.items[e.item as usize].as_ref().expect("live slot"),
        )
    }

    /// Removes the entry with the smallest `(key, sequence)`.
    pub fn extract_min(&mut self) -> Option<(K, T)> {
        let e = self.remove_at(0)?;
        self.metrics.extractions += 1;
        Some(e)
    }

    /// Removes the entry with the largest `(key, sequence)` for good.
    pub fn prune_max(&mut self) -> Option<(K, T)> {
        let i = self.max_index()?;
        let e = self.remove_at(i)?;
        self.metrics.prunes += 1;
        Some(e)
    }

    #[cfg(test)]
    fn less(&self, a: usize, b: usize) -> bool {
        self.heap[a].less(&self.heap[b])
    }

    fn max_index(&self) -> Option<usize> {
        match self.heap.len() {
            0 => None,
            1 => Some(0),
            2 => Some(1),
            _ => Some(if self.heap[1].less(&self.heap[2]) {
                2
            } else {
                1
            }),
        }
    }

    /// Removes index 0 or a child of the root. Other indices are not needed
    /// and would also require a bubble-up.
    fn remove_at(&mut self, i: usize) -> Option<(K, T)> {
        debug_assert!(i <= 2);
        if i >= self.heap.len() {
            return None;
        }
        let last = self.heap.pop().expect("non-empty");
        let removed = if i < self.heap.len() {
            let removed = self.heap[i];
            self.trickle_down(i, last);
            removed
        } else {
            last
        };
        let item = self.items[removed.item as usize].take().expect("live slot");
        self.free.push(removed.item);
        Some((removed.key, item))
    }

    /// Places `x`, currently at the leaf `i`, by moving ancestors down.
    fn bubble_up(&mut self, mut i: usize, x: Slot<K>) {
        if i == 0 {
            return;
        }
        let parent = (i - 1) / 2;
        let mut max_level = !is_min_level(i);
        // x belongs on the parent's kind of level if it beats the parent there
        if x.above(&self.heap[parent], !max_level) {
            self.heap[i] = self.heap[parent];
            i = parent;
            max_level = !max_level;
        }
        while i > 2 {
            let grand = ((i - 1) / 2 - 1) / 2;
            if !x.above(&self.heap[grand], max_level) {
                break;
            }
            self.heap[i] = self.heap[grand];
            i = grand;
        }
        self.heap[i] = x;
    }

    /// Places `x` in the hole at `i` by moving descendants up.
    fn trickle_down(&mut self, mut i: usize, mut x: Slot<K>) {
        let max_level = !is_min_level(i);
        let len = self.heap.len();
        loop {
            let child = 2 * i + 1;
            if child >= len {
                break;
            }
            // best among children and grandchildren
            let mut m = child;
            if child + 1 < len && self.heap[child + 1].above(&self.heap[m], max_level) {
                m = child + 1;
            }
            let grand = 4 * i + 3;
            for g in grand..(grand + 4).min(len) {
                if self.heap[g].above(&self.heap[m], max_level) {
                    m = g;
                }
            }
            if !self.heap[m].above(&x, max_level) {
                break;
            }
            self.heap[i] = self.heap[m];
            i = m;
            if m < grand {
                break;
            }
            // x now sits two levels down; it must also respect the parent,
            // which is on the opposite kind of level
            let parent = (m - 1) / 2;
            if x.above(&self.heap[parent], !max_level) {
                std::mem::swap(&mut x, &mut self.heap[parent]);
            }
        }
        self.heap[i] = x;
    }

    /// Checks the min-max ordering of every entry against its descendants.
    #[cfg(test)]
    fn assert_heap_order(&self) {
        for i in 1..self.heap.len() {
            let mut a = (i - 1) / 2;
            loop {
                if is_min_level(a) {
                    assert!(!self.less(i, a), "entry {i} smaller than min ancestor {a}");
                } else {
                    assert!(!self.less(a, i), "entry {i} larger than max ancestor {a}");
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) / 2;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn level_parity() {
        assert!(is_min_level(0));
        assert!(!is_min_level(1) && !is_min_level(2));
        assert!((3..7).all(is_min_level));
        assert!((7..15).all(|i| !is_min_level(i)));
    }

    #[test]
    fn insert_tracks_size_and_peak() {
        let mut pool = BoundedPool::new();
        for (item, key) in [("a", 5i64), ("b", 2), ("c", 9)] {
            pool.insert(item, key);
        }
        assert_eq!(pool.len(), 3);
        let m = pool.metrics();
        assert_eq!((m.total_insertions, m.peak_size), (3, 3));
    }

    #[test]
    fn equal_keys_leave_in_insertion_order() {
        let mut pool = BoundedPool::new();
        pool.insert("first", 4i64);
        pool.insert("second", 4);
        assert_eq!(pool.extract_min(), Some((4, "first")));
        assert_eq!(pool.extract_min(), Some((4, "second")));
    }

    #[test]
    fn extract_and_prune_ends() {
        let mut pool = BoundedPool::new();
        for k in [5i64, 2, 9] {
            pool.insert(k, k);
        }
        assert_eq!(pool.peek_min().map(|(k, _)| *k), Some(2));
        assert_eq!(pool.peek_max().map(|(k, _)| *k), Some(9));
        assert_eq!(pool.prune_max(), Some((9, 9)));
        assert_eq!(pool.extract_min(), Some((2, 2)));
        assert_eq!(pool.extract_min(), Some((5, 5)));
        assert_eq!(pool.extract_min(), None);
        assert_eq!(pool.prune_max(), None);
        let m = pool.metrics();
        assert_eq!((m.extractions, m.prunes), (2, 1));
    }

    #[test]
    fn singleton_pool() {
        let mut pool = BoundedPool::new();
        pool.insert('x', 1.5f64);
        assert_eq!(pool.extract_min(), Some((1.5, 'x')));
        assert!(pool.is_empty());
    }

    #[derive(Clone, Debug)]
    enum Op {
        Insert(i64),
        ExtractMin,
        PruneMax,
    }

    fn op() -> impl Strategy<Value = Op> {
        prop_oneof![
            3 => (0i64..20).prop_map(Op::Insert),
            1 => Just(Op::ExtractMin),
            1 => Just(Op::PruneMax),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        /// Any interleaving behaves like a sorted list of (key, seq).
        #[test]
        fn matches_sorted_list_model(ops in prop::collection::vec(op(), 0..200)) {
            let mut pool = BoundedPool::new();
            let mut model: Vec<(i64, u64)> = Vec::new();
            let mut seq = 0u64;
            let (mut inserts, mut peak, mut extracts, mut prunes) = (0u64, 0u64, 0u64, 0u64);
            for op in ops {
                match op {
                    Op::Insert(k) => {
                        let h = pool.insert(seq, k);
                        prop_assert_eq!(h, Handle(seq));
                        model.push((k, seq));
                        model.sort();
                        seq += 1;
                        inserts += 1;
                        peak = peak.max(model.len() as u64);
                    }
                    Op::ExtractMin => {
                        let got = pool.extract_min();
                        let want = if model.is_empty() { None } else { Some(model.remove(0)) };
                        if want.is_some() { extracts += 1; }
                        prop_assert_eq!(got, want);
                    }
                    Op::PruneMax => {
                        let got = pool.prune_max();
                        let want = model.pop();
                        if want.is_some() { prunes += 1; }
                        prop_assert_eq!(got, want);
                    }
                }
                pool.assert_heap_order();
                prop_assert_eq!(pool.len(), model.len());
                let m = pool.metrics();
                prop_assert_eq!(m.total_insertions - m.extractions - m.prunes, pool.len() as u64);
            }
            let m = pool.metrics();
            prop_assert_eq!((m.total_insertions, m.peak_size, m.extractions, m.prunes), (inserts, peak, extracts, prunes));
            prop_assert!(m.peak_size <= m.total_insertions);
        }
    }
}
