//! Subset representations: sorted position lists, bit patterns, and the
//! cursor summary of a bit pattern.

use std::error::Error;
use std::fmt;
use std::str::FromStr;

use crate::input::InputSet;
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetError {
    Empty,
    NotIncreasing,
    OutOfRange { position: usize, n: usize },
    BadBit(char),
}

impl fmt::Display for SubsetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetError::Empty => write!(f, "subset has no positions"),
            SubsetError::NotIncreasing => write!(f, "positions are not strictly increasing"),
            SubsetError::OutOfRange { position, n } => {
                write!(f, "position {position} outside 1..={n}")
            }
            SubsetError::BadBit(c) => write!(f, "bit pattern contains `{c}`"),
        }
    }
}

impl Error for SubsetError {}

/// A non-empty, strictly increasing list of 1-based positions.
///
/// Ordering is lexicographic on the position list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetPositions(Vec<usize>);

impl SubsetPositions {
    /// Checks the positions against a universe of size `n`.
    pub fn new(positions: Vec<usize>, n: usize) -> Result<Self, SubsetError> {
        if positions.is_empty() {
            return Err(SubsetError::Empty);
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SubsetError::NotIncreasing);
        }
        for &p in &positions {
            if p == 0 || p > n {
                return Err(SubsetError::OutOfRange { position: p, n });
            }
        }
        Ok(SubsetPositions(positions))
    }

    /// Builds from positions already known to be valid.
    pub(crate) fn from_sorted_unchecked(positions: Vec<usize>) -> Self {
        debug_assert!(!positions.is_empty() && positions.windows(2).all(|w| w[0] < w[1]));
        SubsetPositions(positions)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn contains(&self, position: usize) -> bool {
        self.0.binary_search(&position).is_ok()
    }

    /// Bit pattern of this subset over `n` positions.
    pub fn to_bits(&self, n: usize) -> BitPattern {
        let mut bits = BitPattern::zeros(n);
        for &p in &self.0 {
            bits.set(p, true);
        }
        bits
    }
}

impl fmt::Display for SubsetPositions {
    /// Comma-joined positions, e.g. `1,3,6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Sum of the values selected by `subset`.
pub fn sum_of<W: Weight>(subset: &SubsetPositions, input: &InputSet<W>) -> W {
    input.sum_of(subset.as_slice())
}

/// One flag per position, stored a byte each.
///
/// Written and parsed as a string of `0`/`1` characters with position 1
/// first. The derived ordering matches the ordering of those strings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitPattern(Vec<bool>);

impl BitPattern {
    pub fn zeros(n: usize) -> Self {
        BitPattern(vec![false; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Bit at 1-based `position`.
    #[inline]
    pub fn get(&self, position: usize) -> bool {
        self.0[position - 1]
    }

    #[inline]
    pub fn set(&mut self, position: usize, bit: bool) {
        self.0[position - 1] = bit;
    }

    #[inline]
    pub fn swap(&mut self, a: usize, b: usize) {
        self.0.swap(a - 1, b - 1);
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Set positions in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1)
    }

    /// Scans all `n` bits for the set positions.
    pub fn positions(&self) -> Option<SubsetPositions> {
        self.positions_with_capacity(0)
    }

    /// Like [`BitPattern::positions`], reserving room for `count` positions.
    pub fn positions_with_capacity(&self, count: usize) -> Option<SubsetPositions> {
        let mut ps = Vec::with_capacity(count);
        ps.extend(self.ones());
        if ps.is_empty() {
            None
        } else {
            Some(SubsetPositions::from_sorted_unchecked(ps))
        }
    }

    /// Bit pattern for the low `n` bits of `mask`, bit 0 being position 1.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        BitPattern((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    /// Inverse of [`BitPattern::from_mask`]; `n` must be at most 64.
    pub fn to_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |m, (i, &b)| m | (b as u64) << i)
    }
}

impl fmt::Display for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPattern({self})")
    }
}

impl FromStr for BitPattern {
    type Err = SubsetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(SubsetError::BadBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitPattern)
    }
}

/// Four positions that summarize a bit pattern well enough to derive its
/// children in the final DAG in constant time. Zero means "no such position".
///
/// * `gap_head`: the first 1 that follows the first run of 0s.
/// * `prefix_end`: the last 1 of the leading run of 1s, if position 1 is set.
/// * `last`: the rightmost 1. Never zero.
/// * `gap_next`: the first 1 strictly after `gap_head`.
///
/// For `10110`: the first run of 0s is position 2, so `gap_head = 3`;
/// `prefix_end = 1`; `last = 4`; `gap_next = 4`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cursors {
    pub gap_head: u32,
    pub prefix_end: u32,
    pub last: u32,
    pub gap_next: u32,
}

impl Cursors {
    pub const fn new(gap_head: u32, prefix_end: u32, last: u32, gap_next: u32) -> Self {
        Cursors {
            gap_head,
            prefix_end,
            last,
            gap_next,
        }
    }

    /// `(gap_head, prefix_end, last, gap_next)`.
    pub fn tuple(&self) -> (u32, u32, u32, u32) {
        (self.gap_head, self.prefix_end, self.last, self.gap_next)
    }
}

/// Computes [`Cursors`] by scanning the whole pattern.
///
/// This is the slow, obviously-correct reference that incremental cursor
/// maintenance is checked against.
pub fn cursors_from_bits(bits: &BitPattern) -> Result<Cursors, SubsetError> {
    let n = bits.len();
    let ones: Vec<usize> = (1..=n).filter(|&i| bits.get(i)).collect();
    let Some(&last) = ones.last() else {
        return Err(SubsetError::Empty);
    };

    let prefix_end = if bits.get(1) {
        (1..=n).take_while(|&i| bits.get(i)).last().unwrap()
    } else {
        0
    };

    // first 0, then the first 1 after it
    let gap_head = (1..=n)
        .find(|&i| !bits.get(i))
        .and_then(|zero| (zero + 1..=n).find(|&i| bits.get(i)))
        .unwrap_or(0);

    let gap_next = if gap_head == 0 {
        0
    } else {
        (gap_head + 1..=n).find(|&i| bits.get(i)).unwrap_or(0)
    };

    Ok(Cursors::new(
        gap_head as u32,
        prefix_end as u32,
        last as u32,
        gap_next as u32,
    ))
}
