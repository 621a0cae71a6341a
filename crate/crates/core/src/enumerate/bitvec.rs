use crate::dag::{final_dag_children, BitNode};
use crate::input::InputSet;
use crate::pool::{BoundedPool, RunMetrics};
use crate::ranked::RankedSubset;
use crate::weight::Weight;

use super::{check_k, subset_count, EnumError, Enumerator};

/// On-demand walk of the final DAG with a bit pattern stored in every node.
///
/// Per step: extract the minimum, emit it with positions decoded from its
/// pattern (O(n)), insert its children (at most two), then discard the pool
/// maximum if more than `k - q` candidates remain after q emissions. The
/// k-th extraction inserts nothing, so total insertions stay within
/// `[k, 2k - 1]`.
pub struct OnDemandBitVec<'a, W: Weight> {
    input: &'a InputSet<W>,
    k: u64,
    emitted: u64,
    pool: BoundedPool<BitNode<W>, W>,
}

impl<'a, W: Weight> OnDemandBitVec<'a, W> {
    pub fn new(input: &'a InputSet<W>, k: u64) -> Result<Self, EnumError> {
        check_k(k)?;
        let mut pool = BoundedPool::new();
        let root = BitNode::root(input);
        let key = root.sum;
        pool.insert(root, key);
        Ok(OnDemandBitVec {
            input,
            k,
            emitted: 0,
            pool,
        })
    }
}

impl<W: Weight> Iterator for OnDemandBitVec<'_, W> {
    type Item = RankedSubset<W>;

    fn next(&mut self) -> Option<RankedSubset<W>> {
        if self.emitted == self.k {
            return None;
        }
        let (sum, node) = self.pool.extract_min()?;
        self.emitted += 1;
        let q = self.emitted;

        if q < self.k {
            for (child, _) in final_dag_children(&node, self.input) {
                let key = child.sum;
                self.pool.insert(child, key);
            }
            if self.pool.len() as u64 > self.k - q {
                self.pool.prune_max();
            }
        }

        Some(RankedSubset {
            rank: q,
            sum,
            positions: Some(node.positions()),
            delta: None,
        })
    }
}

impl<W: Weight> Enumerator<W> for OnDemandBitVec<'_, W> {
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

    #[test]
    fn root_is_emitted_first() {
        let r = InputSet::new(vec![5i64, 9, 2]).unwrap();
        let first = OnDemandBitVec::new(&r, 3).unwrap().next().unwrap();
        assert_eq!(first.rank, 1);
        assert_eq!(first.sum, 2);
        assert_eq!(first.positions.unwrap().as_slice(), &[1]);
    }

    #[test]
    fn small_example() {
        let r = InputSet::new(vec![3i64, 7, 12, 14]).unwrap();
        let out: Vec<_> = OnDemandBitVec::new(&r, 3).unwrap().collect();
        let sums: Vec<i64> = out.iter().map(|s| s.sum).collect();
        assert_eq!(sums, [3, 7, 10]);
        let subsets: Vec<Vec<usize>> = out
            .into_iter()
            .map(|s| s.positions.unwrap().into_vec())
            .collect();
        assert_eq!(subsets, vec![vec![1], vec![2], vec![1, 2]]);
    }

    #[test]
    fn exhausts_small_inputs() {
        let r = InputSet::new(vec![1i64, 2, 3, 4]).unwrap();
        let mut e = OnDemandBitVec::new(&r, 100).unwrap();
        assert_eq!(e.by_ref().count(), 15);
        assert!(e.truncated());
        let m = e.metrics();
        assert_eq!(m.total_insertions, 15);
    }
}
