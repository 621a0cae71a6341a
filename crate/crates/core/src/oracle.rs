//! Brute-force ranking of every non-empty subset, for small inputs.

use std::cmp::Ordering;
use std::error::Error;
use std::fmt;

use crate::input::InputSet;
use crate::subset::SubsetPositions;
use crate::weight::Weight;

/// Largest input length the oracle accepts.
pub const ORACLE_MAX_N: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    TooLarge { n: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge { n } => {
                write!(f, "brute force needs n <= {ORACLE_MAX_N}, got {n}")
            }
        }
    }
}

impl Error for OracleError {}

/// A subset as a bit mask (bit 0 is position 1) with its sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleEntry<W> {
    pub sum: W,
    pub mask: u32,
}

impl<W> OracleEntry<W> {
    pub fn positions(&self) -> SubsetPositions {
        let ps = (0..32)
            .filter(|b| self.mask >> b & 1 == 1)
            .map(|b| b + 1)
            .collect();
        SubsetPositions::from_sorted_unchecked(ps)
    }
}

/// Compares two masks by their position lists, lexicographically.
fn cmp_positions(a: u32, b: u32) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let d = (a ^ b).trailing_zeros();
    // Both lists agree below d. The one holding d continues with d; the
    // other continues with something larger, or has ended and is a prefix.
    let a_holds = a >> d & 1 == 1;
    let other = if a_holds { b } else { a };
    let other_continues = other.checked_shr(d + 1).unwrap_or(0) != 0;
    let holder_order = if other_continues {
        Ordering::Less
    } else {
        Ordering::Greater
    };
    if a_holds {
        holder_order
    } else {
        holder_order.reverse()
    }
}

/// Every non-empty subset sorted by sum, then by position list.
pub fn all_subsets_sorted<W: Weight>(
    input: &InputSet<W>,
) -> Result<Vec<OracleEntry<W>>, OracleError> {
    let n = input.len();
    if n > ORACLE_MAX_N {
        return Err(OracleError::TooLarge { n });
    }
    let values = input.values();
    let mut entries: Vec<OracleEntry<W>> = (1u32..1 << n)
        .map(|mask| {
            let sum = (0..n)
                .filter(|b| mask >> b & 1 == 1)
                .fold(W::zero(), |acc, b| acc + values[b]);
            OracleEntry { sum, mask }
        })
        .collect();
    entries.sort_by(|a, b| {
        a.sum
            .total_cmp(&b.sum)
            .then_with(|| cmp_positions(a.mask, b.mask))
    });
    Ok(entries)
}

/// The first `min(k, 2^n - 1)` entries of [`all_subsets_sorted`].
pub fn topk_oracle<W: Weight>(
    input: &InputSet<W>,
    k: u64,
) -> Result<Vec<OracleEntry<W>>, OracleError> {
    let mut all = all_subsets_sorted(input)?;
    all.truncate(k.min(all.len() as u64) as usize);
    Ok(all)
}
