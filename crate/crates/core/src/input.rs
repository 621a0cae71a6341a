//! The sorted input list and its text format.
//!
//! Input text is a sequence of numbers separated by any whitespace. A line
//! whose first non-blank character is `#` is a comment. Values are sorted on
//! load, so the original order does not matter.

use std::error::Error;
use std::fmt;
use std::io::Read;

use crate::weight::{Mode, Weight};

#[derive(Clone, Debug, PartialEq)]
pub enum InputError {
    Empty,
    Unparseable {
        line: usize,
        token: String,
    },
    NegativeValue {
        line: usize,
        token: String,
    },
    /// The sum of all values could leave the 64-bit integer range.
    Overflow,
    Io(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Empty => write!(f, "input contains no numbers"),
            InputError::Unparseable { line, token } => {
                write!(f, "line {line}: cannot parse `{token}` as a number")
            }
            InputError::NegativeValue { line, token } => {
                write!(f, "line {line}: negative value `{token}` is not supported")
            }
            InputError::Overflow => {
                write!(
                    f,
                    "values are too large: their total does not fit in 64 bits"
                )
            }
            InputError::Io(msg) => write!(f, "cannot read input: {msg}"),
        }
    }
}

impl Error for InputError {}

/// A non-empty list of non-negative values sorted in non-decreasing order.
///
/// Positions are 1-based: `value(1)` is the smallest value.
#[derive(Clone, Debug, PartialEq)]
pub struct InputSet<W> {
    values: Vec<W>,
}

impl<W: Weight> InputSet<W> {
    /// Validates and sorts `values`.
    pub fn new(mut values: Vec<W>) -> Result<Self, InputError> {
        if values.is_empty() {
            return Err(InputError::Empty);
        }
        if let Some(v) = values.iter().find(|v| v.is_negative()) {
            return Err(InputError::NegativeValue {
                line: 0,
                token: v.to_string(),
            });
        }
        values.sort_by(W::total_cmp);
        let max = *values.last().unwrap();
        if !W::sum_fits(values.len(), max) {
            return Err(InputError::Overflow);
        }
        Ok(InputSet { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mode(&self) -> Mode {
        W::MODE
    }

    pub fn values(&self) -> &[W] {
        &self.values
    }

    /// The value at 1-based `position`.
    #[inline]
    pub fn value(&self, position: usize) -> W {
        self.values[position - 1]
    }

    /// Sum of the values at the given 1-based positions, in the order given.
    pub fn sum_of(&self, positions: &[usize]) -> W {
        positions
            .iter()
            .fold(W::zero(), |acc, &p| acc + self.value(p))
    }
}

/// Parses input text into a sorted [`InputSet`].
///
/// ```
/// use topk_subsets::load_input;
///
/// let r = load_input::<i64>("# prices\n4 1\n3 2\n").unwrap();
/// assert_eq!(r.values(), &[1, 2, 3, 4]);
/// ```
pub fn load_input<W: Weight>(text: &str) -> Result<InputSet<W>, InputError> {
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim_start().starts_with('#') {
            continue;
        }
        for token in line.split_whitespace() {
            let v = W::parse_token(token).ok_or_else(|| InputError::Unparseable {
                line: line_no,
                token: token.to_string(),
            })?;
            if v.is_negative() {
                return Err(InputError::NegativeValue {
                    line: line_no,
                    token: token.to_string(),
                });
            }
            values.push(v);
        }
    }
    InputSet::new(values)
}

/// Reads everything from `reader` and parses it with [`load_input`].
pub fn read_input<W: Weight, R: Read>(mut reader: R) -> Result<InputSet<W>, InputError> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| InputError::Io(e.to_string()))?;
    load_input(&text)
}
