//! Enumerator output records and reconstruction of subsets from deltas.

use std::error::Error;
use std::fmt;

use crate::subset::SubsetPositions;
use crate::weight::Weight;

/// How a subset differs from the earlier-ranked subset it was derived from.
///
/// The first subset has no parent and adds position 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Delta {
    pub parent_rank: Option<u64>,
    pub removed: Option<usize>,
    pub added: Option<usize>,
}

impl Delta {
    pub const ROOT: Delta = Delta {
        parent_rank: None,
        removed: None,
        added: Some(1),
    };
}

/// One reported subset. Ranks start at 1 and are consecutive.
#[derive(Clone, Debug, PartialEq)]
pub struct RankedSubset<W> {
    pub rank: u64,
    pub sum: W,
    pub positions: Option<SubsetPositions>,
    pub delta: Option<Delta>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaError {
    MissingDelta { rank: u64 },
    DanglingParent { rank: u64, parent_rank: u64 },
    PositionAbsent { rank: u64, position: usize },
    PositionPresent { rank: u64, position: usize },
    EmptySubset { rank: u64 },
}

impl fmt::Display for DeltaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaError::MissingDelta { rank } => write!(f, "rank {rank} carries no delta"),
            DeltaError::DanglingParent { rank, parent_rank } => {
                write!(f, "rank {rank} refers to parent rank {parent_rank}, which was not emitted before it")
            }
            DeltaError::PositionAbsent { rank, position } => {
                write!(
                    f,
                    "rank {rank} removes position {position}, which its parent does not contain"
                )
            }
            DeltaError::PositionPresent { rank, position } => {
                write!(
                    f,
                    "rank {rank} adds position {position}, which its parent already contains"
                )
            }
            DeltaError::EmptySubset { rank } => {
                write!(f, "rank {rank} reconstructs to an empty subset")
            }
        }
    }
}

impl Error for DeltaError {}

/// Replays delta records into explicit position lists.
///
/// Every reconstructed subset is retained so later deltas can refer to it,
/// so memory grows with the total size of all emitted subsets.
#[derive(Debug, Default)]
pub struct DeltaExpander {
    history: Vec<Vec<usize>>,
}

impl DeltaExpander {
    pub fn new() -> Self {
        Self::default()
    }

    /// Positions for the next record, which must have rank `history.len() + 1`
    /// or carry a parent rank that was already expanded.
    pub fn expand(&mut self, rank: u64, delta: &Delta) -> Result<SubsetPositions, DeltaError> {
        let mut positions = match delta.parent_rank {
            None => Vec::new(),
            Some(parent) => {
                let idx = parent
                    .checked_sub(1)
                    .filter(|&i| parent < rank && (i as usize) < self.history.len());
                match idx {
                    Some(i) => self.history[i as usize].clone(),
                    None => {
                        return Err(DeltaError::DanglingParent {
                            rank,
                            parent_rank: parent,
                        })
                    }
                }
            }
        };
        if let Some(p) = delta.removed {
            match positions.binary_search(&p) {
                Ok(i) => {
                    positions.remove(i);
                }
                Err(_) => return Err(DeltaError::PositionAbsent { rank, position: p }),
            }
        }
        if let Some(p) = delta.added {
            match positions.binary_search(&p) {
                Ok(_) => return Err(DeltaError::PositionPresent { rank, position: p }),
                Err(i) => positions.insert(i, p),
            }
        }
        if positions.is_empty() {
            return Err(DeltaError::EmptySubset { rank });
        }
        self.history.push(positions.clone());
        Ok(SubsetPositions::from_sorted_unchecked(positions))
    }

    /// Keeps an already explicit subset so later deltas can refer to it.
    pub fn record(&mut self, positions: &SubsetPositions) {
        self.history.push(positions.as_slice().to_vec());
    }
}

/// Iterator adapter filling in `positions` from each record's delta.
///
/// Records that already carry positions pass through unchanged and stay
/// available as parents for later deltas.
pub struct ExpandDeltas<I> {
    inner: I,
    expander: DeltaExpander,
    failed: bool,
}

impl<W: Weight, I: Iterator<Item = RankedSubset<W>>> Iterator for ExpandDeltas<I> {
    type Item = Result<RankedSubset<W>, DeltaError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let mut item = self.inner.next()?;
        let result = match (&item.positions, &item.delta) {
            (Some(p), _) => {
                self.expander.record(p);
                Ok(p.clone())
            }
            (None, Some(d)) => self.expander.expand(item.rank, d),
            (None, None) => Err(DeltaError::MissingDelta { rank: item.rank }),
        };
        match result {
            Ok(positions) => {
                item.positions = Some(positions);
                Some(Ok(item))
            }
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

/// Turns a stream of delta-only records into records with explicit
/// positions. The stream stops after the first error.
pub fn expand_deltas<W, I>(stream: I) -> ExpandDeltas<I::IntoIter>
where
    W: Weight,
    I: IntoIterator<Item = RankedSubset<W>>,
{
    ExpandDeltas {
        inner: stream.into_iter(),
        expander: DeltaExpander::new(),
        failed: false,
    }
}
