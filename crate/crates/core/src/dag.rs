//! Child rules of the final single-parent DAG over all non-empty subsets.
//!
//! The root is `{1}`. Every other subset has exactly one parent and every
//! node has at most two children, produced by three rules:
//!
//! * [`EdgeType::Type1`] moves the 1 at `gap_head` one step right, provided
//!   the next position is empty.
//! * [`EdgeType::Type2`] moves the 1 at `prefix_end` one step right.
//! * [`EdgeType::Incremental`] turns `0 1…1 0…0` into `1 1…1 0…0`.
//!
//! Moving a 1 to the right or adding the smallest value never lowers the
//! sum, so a best-first walk over these edges visits subsets in sum order.

use std::fmt;

use arrayvec::ArrayVec;

use crate::input::InputSet;
use crate::ranked::Delta;
use crate::subset::{BitPattern, Cursors, SubsetPositions};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeType {
    Type1,
    Type2,
    Incremental,
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeType::Type1 => "Type1",
            EdgeType::Type2 => "Type2",
            EdgeType::Incremental => "Incr",
        })
    }
}

/// Up to three candidate children; at most two are ever produced.
pub type Children<N> = ArrayVec<(N, EdgeType), 3>;

/// A node that stores its full bit pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct BitNode<W> {
    pub bits: BitPattern,
    pub size: u32,
    pub sum: W,
    pub gap_head: u32,
    pub prefix_end: u32,
    pub last: u32,
}

impl<W: Weight> BitNode<W> {
    /// The subset `{1}`. Costs O(n) to lay out the pattern.
    pub fn root(input: &InputSet<W>) -> Self {
        let mut bits = BitPattern::zeros(input.len());
        bits.set(1, true);
        BitNode {
            bits,
            size: 1,
            sum: input.value(1),
            gap_head: 0,
            prefix_end: 1,
            last: 1,
        }
    }

    pub fn positions(&self) -> SubsetPositions {
        self.bits
            .positions_with_capacity(self.size as usize)
            .expect("node patterns are never empty")
    }

    /// Bytes owned on the heap by this node.
    pub fn heap_bytes(&self) -> usize {
        self.bits.len()
    }
}

/// Children of `node` in the final DAG, computed on the stored bit pattern.
pub fn final_dag_children<W: Weight>(
    node: &BitNode<W>,
    input: &InputSet<W>,
) -> Children<BitNode<W>> {
    let n = input.len() as u32;
    let mut out = Children::new();

    let p1 = node.gap_head;
    if p1 > 1 && p1 < n && !node.bits.get(p1 as usize + 1) {
        let mut child = node.clone();
        child.bits.set(p1 as usize, false);
        child.bits.set(p1 as usize + 1, true);
        child.gap_head = p1 + 1;
        if child.last == p1 {
            child.last += 1;
        }
        child.sum = child.sum - input.value(p1 as usize) + input.value(p1 as usize + 1);
        out.push((child, EdgeType::Type1));
    }

    let p2 = node.prefix_end;
    if p2 > 0 && p2 < n {
        let mut child = node.clone();
        child.bits.swap(p2 as usize, p2 as usize + 1);
        child.gap_head = p2 + 1;
        if child.last == p2 {
            child.last = p2 + 1;
        }
        child.prefix_end = p2 - 1;
        child.sum = child.sum - input.value(p2 as usize) + input.value(p2 as usize + 1);
        out.push((child, EdgeType::Type2));
    }

    if p1 == 2 && p2 == 0 && node.last == node.size + 1 {
        let mut child = node.clone();
        child.bits.set(1, true);
        child.gap_head = 0;
        child.prefix_end = child.last;
        child.size += 1;
        child.sum = child.sum + input.value(1);
        out.push((child, EdgeType::Incremental));
    }

    out
}

/// A node that stores only cursors, size, sum and how it was derived.
///
/// Its footprint is fixed; nothing in it grows with the input length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompactNode<W> {
    pub cursors: Cursors,
    pub size: u32,
    pub sum: W,
    /// Rank of the parent, 0 for the root.
    pub parent_rank: u64,
    /// Position removed relative to the parent, 0 for none.
    pub removed: u32,
    /// Position added relative to the parent, 0 for none.
    pub added: u32,
}

impl<W: Weight> CompactNode<W> {
    pub fn root(input: &InputSet<W>) -> Self {
        CompactNode {
            cursors: Cursors::new(0, 1, 1, 0),
            size: 1,
            sum: input.value(1),
            parent_rank: 0,
            removed: 0,
            added: 1,
        }
    }

    pub fn delta(&self) -> Delta {
        let opt = |p: u32| (p != 0).then_some(p as usize);
        Delta {
            parent_rank: (self.parent_rank != 0).then_some(self.parent_rank),
            removed: opt(self.removed),
            added: opt(self.added),
        }
    }

    /// Bytes owned on the heap by this node. Always zero.
    pub fn heap_bytes(&self) -> usize {
        0
    }
}

/// Children of a cursor-only node, tagged with `parent_rank` for their
/// deltas.
///
/// Produces the same subsets as [`final_dag_children`] on the implied
/// patterns. The bit test of the Type1 rule is answered by `gap_next`,
/// which is the first 1 after `gap_head`.
pub fn compact_children<W: Weight>(
    node: &CompactNode<W>,
    parent_rank: u64,
    input: &InputSet<W>,
) -> Children<CompactNode<W>> {
    let n = input.len() as u32;
    let c = node.cursors;
    let mut out = Children::new();

    if c.gap_head > 1 && c.gap_head < n && c.gap_next != c.gap_head + 1 {
        let p1 = c.gap_head;
        let child = CompactNode {
            cursors: Cursors::new(
                p1 + 1,
                c.prefix_end,
                if c.last == p1 { p1 + 1 } else { c.last },
                c.gap_next,
            ),
            size: node.size,
            sum: node.sum - input.value(p1 as usize) + input.value(p1 as usize + 1),
            parent_rank,
            removed: p1,
            added: p1 + 1,
        };
        out.push((child, EdgeType::Type1));
    }

    if c.prefix_end > 0 && c.prefix_end < n {
        let p2 = c.prefix_end;
        let child = CompactNode {
            cursors: Cursors::new(
                p2 + 1,
                p2 - 1,
                if c.last == p2 { p2 + 1 } else { c.last },
                c.gap_head,
            ),
            size: node.size,
            sum: node.sum - input.value(p2 as usize) + input.value(p2 as usize + 1),
            parent_rank,
            removed: p2,
            added: p2 + 1,
        };
        out.push((child, EdgeType::Type2));
    }

    if c.gap_head == 2 && c.prefix_end == 0 && c.last == node.size + 1 {
        let child = CompactNode {
            cursors: Cursors::new(0, c.last, c.last, 0),
            size: node.size + 1,
            sum: node.sum + input.value(1),
            parent_rank,
            removed: 0,
            added: 1,
        };
        out.push((child, EdgeType::Incremental));
    }

    out
}

/// Child generation strategy for the cursor-only enumerator.
///
/// [`FinalDag`] is the real rule; the trait exists so verification tooling
/// can run the same search loop over a deliberately broken rule.
pub trait CompactRule<W: Weight> {
    fn children(
        &self,
        node: &CompactNode<W>,
        parent_rank: u64,
        input: &InputSet<W>,
    ) -> Children<CompactNode<W>>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FinalDag;

impl<W: Weight> CompactRule<W> for FinalDag {
    #[inline]
    fn children(
        &self,
        node: &CompactNode<W>,
        parent_rank: u64,
        input: &InputSet<W>,
    ) -> Children<CompactNode<W>> {
        compact_children(node, parent_rank, input)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::cursors_from_bits;

    fn bit_node(pattern: &str, input: &InputSet<i64>) -> BitNode<i64> {
        let bits: BitPattern = pattern.parse().unwrap();
        let c = cursors_from_bits(&bits).unwrap();
        let positions = bits.positions().unwrap();
        BitNode {
            size: positions.len() as u32,
            sum: input.sum_of(positions.as_slice()),
            bits,
            gap_head: c.gap_head,
            prefix_end: c.prefix_end,
            last: c.last,
        }
    }

    fn compact_node(pattern: &str, input: &InputSet<i64>) -> CompactNode<i64> {
        let bits: BitPattern = pattern.parse().unwrap();
        let positions = bits.positions().unwrap();
        CompactNode {
            cursors: cursors_from_bits(&bits).unwrap(),
            size: positions.len() as u32,
            sum: input.sum_of(positions.as_slice()),
            parent_rank: 0,
            removed: 0,
            added: 0,
        }
    }

    fn r1234() -> InputSet<i64> {
        InputSet::new(vec![1, 2, 3, 4]).unwrap()
    }

    #[test]
    fn bit_children_of_0100() {
        let r = r1234();
        let kids = final_dag_children(&bit_node("0100", &r), &r);
        assert_eq!(kids.len(), 2);
        let (t1, e1) = &kids[0];
        assert_eq!(*e1, EdgeType::Type1);
        assert_eq!(t1.bits.to_string(), "0010");
        assert_eq!((t1.gap_head, t1.prefix_end, t1.last), (3, 0, 3));
        assert_eq!(t1.sum, 3);
        let (inc, e2) = &kids[1];
        assert_eq!(*e2, EdgeType::Incremental);
        assert_eq!(inc.bits.to_string(), "1100");
        assert_eq!(
            (inc.gap_head, inc.prefix_end, inc.last, inc.size),
            (0, 2, 2, 2)
        );
        assert_eq!(inc.sum, 3);
    }

    #[test]
    fn bit_children_of_0110_and_1111() {
        let r = r1234();
        let kids = final_dag_children(&bit_node("0110", &r), &r);
        assert_eq!(kids.len(), 1);
        assert_eq!(kids[0].0.bits.to_string(), "1110");
        assert_eq!(kids[0].1, EdgeType::Incremental);
        assert!(final_dag_children(&bit_node("1111", &r), &r).is_empty());
    }

    #[test]
    fn root_matches_literal_root() {
        let r = r1234();
        assert_eq!(BitNode::root(&r), bit_node("1000", &r));
        let kids = final_dag_children(&BitNode::root(&r), &r);
        assert_eq!(kids.len(), 1);
        assert_eq!(kids[0].0.bits.to_string(), "0100");
        assert_eq!(kids[0].1, EdgeType::Type2);
    }

    #[test]
    fn compact_children_of_0100() {
        let r = r1234();
        let node = compact_node("0100", &r);
        assert_eq!(node.cursors.tuple(), (2, 0, 2, 0));
        let kids = compact_children(&node, 7, &r);
        assert_eq!(kids.len(), 2);
        assert_eq!(kids[0].0.cursors.tuple(), (3, 0, 3, 0));
        assert_eq!(
            kids[0].0.delta(),
            Delta {
                parent_rank: Some(7),
                removed: Some(2),
                added: Some(3)
            }
        );
        assert_eq!(kids[1].0.cursors.tuple(), (0, 2, 2, 0));
        assert_eq!(kids[1].0.size, 2);
        assert_eq!(
            kids[1].0.delta(),
            Delta {
                parent_rank: Some(7),
                removed: None,
                added: Some(1)
            }
        );
    }

    #[test]
    fn compact_children_of_10110() {
        let r = InputSet::new(vec![1i64, 2, 3, 4, 5]).unwrap();
        let node = compact_node("10110", &r);
        assert_eq!(node.cursors.tuple(), (3, 1, 4, 4));
        let kids = compact_children(&node, 1, &r);
        // no Type1: the position after gap_head is occupied
        assert_eq!(kids.len(), 1);
        assert_eq!(kids[0].1, EdgeType::Type2);
        let expected = cursors_from_bits(&"01110".parse().unwrap()).unwrap();
        assert_eq!(kids[0].0.cursors, expected);
        assert_eq!(kids[0].0.sum, 2 + 3 + 4);
    }

    #[test]
    fn compact_root_has_single_type2_child() {
        let r = r1234();
        let kids = compact_children(&CompactNode::root(&r), 1, &r);
        assert_eq!(kids.len(), 1);
        assert_eq!(kids[0].1, EdgeType::Type2);
        assert_eq!(kids[0].0.cursors.tuple(), (2, 0, 2, 0));
        assert_eq!(CompactNode::root(&r).delta(), Delta::ROOT);
    }

    #[test]
    fn compact_node_size_is_fixed() {
        let small = InputSet::new(vec![1i64; 4]).unwrap();
        let large = InputSet::new(vec![1i64; 4000]).unwrap();
        assert_eq!(CompactNode::root(&small).heap_bytes(), 0);
        assert_eq!(CompactNode::root(&large).heap_bytes(), 0);
        assert!(std::mem::size_of::<CompactNode<i64>>() <= 48);
        assert_eq!(BitNode::root(&large).heap_bytes(), 4000);
    }
}
