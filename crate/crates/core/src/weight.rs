//! Numeric value types that subset sums can be computed over.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Sub};
use std::str::FromStr;

/// How input numbers are interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Exact signed 64-bit integers.
    Integer,
    /// IEEE double precision, compared with a relative tolerance.
    Floating,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "int" | "integer" => Ok(Mode::Integer),
            "float" | "floating" => Ok(Mode::Floating),
            other => Err(format!(
                "unknown mode `{other}` (expected `int` or `float`)"
            )),
        }
    }
}

impl Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Integer => "int",
            Mode::Floating => "float",
        })
    }
}

/// Relative tolerance used when comparing floating-point sums.
pub const FLOAT_REL_TOLERANCE: f64 = 1e-9;

/// A number that can be summed, ordered and parsed.
///
/// Implemented for `i64` (exact) and `f64` (tolerant). Ordering inside the
/// enumerators always uses [`Weight::total_cmp`], so even floating keys have a
/// deterministic total order.
pub trait Weight:
    Copy
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    const MODE: Mode;

    fn zero() -> Self;

    fn total_cmp(&self, other: &Self) -> Ordering;

    /// An unsigned image ordered exactly like [`Weight::total_cmp`].
    fn order_key(&self) -> u64;

    /// Parses one whitespace-delimited token. Non-finite floats are rejected.
    fn parse_token(token: &str) -> Option<Self>;

    fn is_negative(&self) -> bool;

    /// Whether `count` copies of `max` can be added without leaving the
    /// representable range.
    fn sum_fits(count: usize, max: Self) -> bool;

    /// Equality up to the mode's tolerance: exact for integers, relative
    /// [`FLOAT_REL_TOLERANCE`] for floats.
    fn approx_eq(a: Self, b: Self) -> bool;
}

impl Weight for i64 {
    const MODE: Mode = Mode::Integer;

    fn zero() -> Self {
        0
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    #[inline]
    fn order_key(&self) -> u64 {
        (*self as u64) ^ (1 << 63)
    }

    fn parse_token(token: &str) -> Option<Self> {
        token.parse().ok()
    }

    fn is_negative(&self) -> bool {
        *self < 0
    }

    fn sum_fits(count: usize, max: Self) -> bool {
        (count as i128) * (max as i128) <= i64::MAX as i128
    }

    fn approx_eq(a: Self, b: Self) -> bool {
        a == b
    }
}

impl Weight for f64 {
    const MODE: Mode = Mode::Floating;

    fn zero() -> Self {
        0.0
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }

    #[inline]
    fn order_key(&self) -> u64 {
        let bits = self.to_bits();
        if bits >> 63 == 1 {
            !bits
        } else {
            bits | 1 << 63
        }
    }

    fn parse_token(token: &str) -> Option<Self> {
        token.parse::<f64>().ok().filter(|v| v.is_finite())
    }

    fn is_negative(&self) -> bool {
        // -0.0 is accepted as zero
        *self < 0.0
    }

    fn sum_fits(count: usize, max: Self) -> bool {
        (count as f64 * max).is_finite()
    }

    fn approx_eq(a: Self, b: Self) -> bool {
        let scale = a.abs().max(b.abs()).max(1.0);
        (a - b).abs() <= FLOAT_REL_TOLERANCE * scale
    }
}
