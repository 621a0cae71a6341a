//! One-shift relations between subsets.
//!
//! A *static* one shift advances a single position by one and keeps the
//! size. An *incremental* one shift adds one new position. The *mandatory*
//! variants keep only one designated parent (or child) per subset, which is
//! what makes the search graph sparse enough to walk without duplicates.
//!
//! The predicates here are written straight from those definitions, by
//! enumerating candidates where the definition quantifies over them. They are
//! deliberately slow; the constant-time child rules in [`crate::dag`] are
//! tested against them.

use crate::subset::SubsetPositions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShiftKind {
    Static,
    Incremental,
    MandatoryStatic,
    MandatoryIncremental,
    ModifiedMandatoryIncremental,
}

/// The incremental edge sets a duplicate-checking search can use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IncrementalEdges {
    /// Every superset with one extra position.
    All,
    /// Only additions before the current first position.
    Mandatory,
    /// Only the addition of position 1.
    ModifiedMandatory,
}

impl IncrementalEdges {
    pub fn kind(self) -> ShiftKind {
        match self {
            IncrementalEdges::All => ShiftKind::Incremental,
            IncrementalEdges::Mandatory => ShiftKind::MandatoryIncremental,
            IncrementalEdges::ModifiedMandatory => ShiftKind::ModifiedMandatoryIncremental,
        }
    }

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            IncrementalEdges::All => "incr",
            IncrementalEdges::Mandatory => "mincr",
            IncrementalEdges::ModifiedMandatory => "mmincr",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "incr" => Some(IncrementalEdges::All),
            "mincr" => Some(IncrementalEdges::Mandatory),
            "mmincr" => Some(IncrementalEdges::ModifiedMandatory),
            _ => None,
        }
    }
}

pub fn is_static_one_shift(s: &SubsetPositions, t: &SubsetPositions) -> bool {
    let (s, t) = (s.as_slice(), t.as_slice());
    if s.len() != t.len() {
        return false;
    }
    let mut advanced = 0;
    for (&a, &b) in s.iter().zip(t) {
        if b == a + 1 {
            advanced += 1;
        } else if b != a {
            return false;
        }
    }
    advanced == 1
}

/// The position `t` adds to `s`, if `t` is `s` plus exactly one position.
fn added_position(s: &[usize], t: &[usize]) -> Option<usize> {
    if t.len() != s.len() + 1 || !s.iter().all(|p| t.binary_search(p).is_ok()) {
        return None;
    }
    t.iter().copied().find(|p| s.binary_search(p).is_err())
}

pub fn is_incremental_one_shift(s: &SubsetPositions, t: &SubsetPositions) -> bool {
    let (s, t) = (s.as_slice(), t.as_slice());
    let Some(added) = added_position(s, t) else {
        return false;
    };
    // the difference of position sums must name the added position
    let diff = t.iter().sum::<usize>() - s.iter().sum::<usize>();
    diff == added
}

/// All subsets of which `t` is a static one shift.
pub fn static_parents(t: &SubsetPositions) -> Vec<SubsetPositions> {
    let t = t.as_slice();
    (0..t.len())
        .filter(|&j| t[j] > 1 && (j == 0 || t[j - 1] < t[j] - 1))
        .map(|j| {
            let mut p = t.to_vec();
            p[j] -= 1;
            SubsetPositions::from_sorted_unchecked(p)
        })
        .collect()
}

/// All static one shifts of `s` within `1..=n`.
pub fn static_children(s: &SubsetPositions, n: usize) -> Vec<SubsetPositions> {
    let s = s.as_slice();
    (0..s.len())
        .filter(|&j| s[j] < n && (j + 1 == s.len() || s[j + 1] > s[j] + 1))
        .map(|j| {
            let mut c = s.to_vec();
            c[j] += 1;
            SubsetPositions::from_sorted_unchecked(c)
        })
        .collect()
}

/// The parent whose position list is lexicographically smallest.
pub fn mandatory_static_parent(t: &SubsetPositions) -> Option<SubsetPositions> {
    static_parents(t).into_iter().min()
}

pub fn is_mandatory_static_one_shift(s: &SubsetPositions, t: &SubsetPositions) -> bool {
    is_static_one_shift(s, t) && mandatory_static_parent(t).as_ref() == Some(s)
}

/// Static children of `s` whose designated parent is `s`.
pub fn mandatory_static_children(s: &SubsetPositions, n: usize) -> Vec<SubsetPositions> {
    static_children(s, n)
        .into_iter()
        .filter(|t| mandatory_static_parent(t).as_ref() == Some(s))
        .collect()
}

/// Mandatory incremental one shift: the added position comes before every
/// position of `s`, and the sums of positions differ by exactly that
/// position.
pub fn is_mandatory_incremental_one_shift(s: &SubsetPositions, t: &SubsetPositions) -> bool {
    match added_position(s.as_slice(), t.as_slice()) {
        Some(added) => added < s.first() && is_incremental_one_shift(s, t),
        None => false,
    }
}

pub fn is_modified_mandatory_incremental(s: &SubsetPositions, t: &SubsetPositions) -> bool {
    is_mandatory_incremental_one_shift(s, t)
        && incremental_children_all(s, usize::MAX, ShiftKind::MandatoryIncremental)
            .into_iter()
            .min()
            .as_ref()
            == Some(t)
}

/// Every incremental child of `s` under the edge definition `kind`, in
/// increasing order of the added position.
///
/// Panics if `kind` is not one of the incremental kinds.
pub fn incremental_children_all(
    s: &SubsetPositions,
    n: usize,
    kind: ShiftKind,
) -> Vec<SubsetPositions> {
    let limit = match kind {
        ShiftKind::Incremental => n,
        ShiftKind::MandatoryIncremental => s.first() - 1,
        ShiftKind::ModifiedMandatoryIncremental => (s.first() - 1).min(1),
        other => panic!("{other:?} is not an incremental shift kind"),
    };
    (1..=limit)
        .filter(|&p| !s.contains(p))
        .map(|p| {
            let mut c = s.as_slice().to_vec();
            let at = c.partition_point(|&x| x < p);
            c.insert(at, p);
            SubsetPositions::from_sorted_unchecked(c)
        })
        .collect()
}
