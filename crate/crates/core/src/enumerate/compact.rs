use crate::dag::{CompactNode, CompactRule, FinalDag};
use crate::input::InputSet;
use crate::pool::{BoundedPool, RunMetrics};
use crate::ranked::RankedSubset;
use crate::weight::Weight;

use super::{check_k, subset_count, EnumError, Enumerator};

/// On-demand walk of the final DAG without bit patterns.
///
/// Same loop as [`super::OnDemandBitVec`], but nodes hold four cursors, the
/// size, the sum and a delta against their parent. Work per step does not
/// depend on n. Records carry only sums and deltas; use
/// [`crate::expand_deltas`] to recover positions.
pub struct OnDemandCompact<'a, W: Weight, R = FinalDag> {
    input: &'a InputSet<W>,
    k: u64,
    emitted: u64,
    pool: BoundedPool<CompactNode<W>, W>,
    rule: R,
}

impl<'a, W: Weight> OnDemandCompact<'a, W, FinalDag> {
    pub fn new(input: &'a InputSet<W>, k: u64) -> Result<Self, EnumError> {
        Self::with_rule(input, k, FinalDag)
    }
}

impl<'a, W: Weight, R: CompactRule<W>> OnDemandCompact<'a, W, R> {
    pub fn with_rule(input: &'a InputSet<W>, k: u64, rule: R) -> Result<Self, EnumError> {
        check_k(k)?;
        let mut pool = BoundedPool::new();
        let root = CompactNode::root(input);
        pool.insert(root, root.sum);
        Ok(OnDemandCompact {
            input,
            k,
            emitted: 0,
            pool,
            rule,
        })
    }
}

impl<W: Weight, R: CompactRule<W>> Iterator for OnDemandCompact<'_, W, R> {
    type Item = RankedSubset<W>;

    #[inline]
    fn next(&mut self) -> Option<RankedSubset<W>> {
        if self.emitted == self.k {
            return None;
        }
        let (sum, node) = self.pool.extract_min()?;
        self.emitted += 1;
        let q = self.emitted;

        if q < self.k {
            for (child, _) in self.rule.children(&node, q, self.input) {
                self.pool.insert(child, child.sum);
            }
            if self.pool.len() as u64 > self.k - q {
                self.pool.prune_max();
            }
        }

        Some(RankedSubset {
            rank: q,
            sum,
            positions: None,
            delta: Some(node.delta()),
        })
    }
}

impl<W: Weight, R: CompactRule<W>> Enumerator<W> for OnDemandCompact<'_, W, R> {
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
    use crate::ranked::{expand_deltas, Delta};

    #[test]
    fn first_records() {
        let r = InputSet::new(vec![1i64, 2, 3, 4]).unwrap();
        let out: Vec<_> = OnDemandCompact::new(&r, 3).unwrap().collect();
        assert_eq!(out[0].delta, Some(Delta::ROOT));
        assert_eq!(
            out[1].delta,
            Some(Delta {
                parent_rank: Some(1),
                removed: Some(1),
                added: Some(2)
            })
        );
        assert!(out.iter().all(|s| s.positions.is_none()));
    }

    #[test]
    fn powers_of_two_expand_to_binary() {
        let r = InputSet::new(vec![1i64, 2, 4, 8]).unwrap();
        let out: Vec<_> = expand_deltas(OnDemandCompact::new(&r, 15).unwrap())
            .collect::<Result<_, _>>()
            .unwrap();
        for s in out {
            let q = s.rank as usize;
            let expect: Vec<usize> = (0..4).filter(|b| q >> b & 1 == 1).map(|b| b + 1).collect();
            assert_eq!(s.positions.unwrap().into_vec(), expect);
            assert_eq!(s.sum, q as i64);
        }
    }
}
