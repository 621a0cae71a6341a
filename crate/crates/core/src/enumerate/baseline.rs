use crate::input::InputSet;
use crate::pool::{BoundedPool, RunMetrics};
use crate::ranked::RankedSubset;
use crate::subset::SubsetPositions;
use crate::weight::Weight;

use super::{check_k, subset_count, EnumError, Enumerator};

/// The two children of `s` in the replace-max / extend-max tree:
/// `(s - {max}) + {max + 1}` and `s + {max + 1}`. None when `max == n`.
///
/// Every non-empty subset of `1..=n` has exactly one parent under this rule,
/// so a best-first walk needs no duplicate checks.
pub fn baseline_children(s: &SubsetPositions, n: usize) -> Vec<SubsetPositions> {
    let max = s.last();
    if max >= n {
        return Vec::new();
    }
    let mut replaced = s.as_slice().to_vec();
    *replaced.last_mut().unwrap() = max + 1;
    let mut extended = s.as_slice().to_vec();
    extended.push(max + 1);
    vec![
        SubsetPositions::from_sorted_unchecked(replaced),
        SubsetPositions::from_sorted_unchecked(extended),
    ]
}

/// Lazy-heap enumerator over the replace-max / extend-max tree.
///
/// Both children are pushed after every extraction, including the last one,
/// so a run that never reaches position `n` makes exactly `2k + 1`
/// insertions and peaks at `k + 1` entries.
pub struct Baseline<'a, W: Weight> {
    input: &'a InputSet<W>,
    k: u64,
    emitted: u64,
    pool: BoundedPool<Vec<usize>, W>,
}

impl<'a, W: Weight> Baseline<'a, W> {
    pub fn new(input: &'a InputSet<W>, k: u64) -> Result<Self, EnumError> {
        check_k(k)?;
        let mut pool = BoundedPool::new();
        pool.insert(vec![1], input.value(1));
        Ok(Baseline {
            input,
            k,
            emitted: 0,
            pool,
        })
    }
}

impl<W: Weight> Iterator for Baseline<'_, W> {
    type Item = RankedSubset<W>;

    fn next(&mut self) -> Option<RankedSubset<W>> {
        if self.emitted == self.k {
            return None;
        }
        let (sum, positions) = self.pool.extract_min()?;
        self.emitted += 1;

        let n = self.input.len();
        let max = *positions.last().unwrap();
        if max < n {
            let next = self.input.value(max + 1);
            let mut replaced = positions.clone();
            *replaced.last_mut().unwrap() = max + 1;
            self.pool
                .insert(replaced, sum - self.input.value(max) + next);
            let mut extended = positions.clone();
            extended.push(max + 1);
            self.pool.insert(extended, sum + next);
        }

        Some(RankedSubset {
            rank: self.emitted,
            sum,
            positions: Some(SubsetPositions::from_sorted_unchecked(positions)),
            delta: None,
        })
    }
}

impl<W: Weight> Enumerator<W> for Baseline<'_, W> {
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

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(v: &[usize]) -> SubsetPositions {
        SubsetPositions::from_sorted_unchecked(v.to_vec())
    }

    #[test]
    fn children_rule() {
        assert_eq!(
            baseline_children(&pos(&[1]), 4),
            vec![pos(&[2]), pos(&[1, 2])]
        );
        assert_eq!(
            baseline_children(&pos(&[1, 3]), 4),
            vec![pos(&[1, 4]), pos(&[1, 3, 4])]
        );
        assert!(baseline_children(&pos(&[2, 4]), 4).is_empty());
    }

    #[test]
    fn emits_everything_in_order() {
        let r = InputSet::new(vec![1i64, 2, 3, 4]).unwrap();
        let e = Baseline::new(&r, 15).unwrap();
        let sums: Vec<i64> = e.map(|s| s.sum).collect();
        assert_eq!(sums, [1, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 9, 10]);
    }

    #[test]
    fn counters_follow_two_k_plus_one() {
        let r = InputSet::new((1..=30i64).map(|x| x * 10).collect()).unwrap();
        let mut e = Baseline::new(&r, 50).unwrap();
        let out: Vec<_> = e.by_ref().collect();
        assert_eq!(out.len(), 50);
        assert!(out
            .iter()
            .all(|s| s.positions.as_ref().unwrap().last() < 30));
        let m = e.metrics();
        assert_eq!(
            (m.total_insertions, m.peak_size, m.extractions),
            (101, 51, 50)
        );
    }
}
