//! Generator weights `F: N -> R_+` and the cost values they produce.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Tolerance used for every real-valued comparison.
pub const TOLERANCE: f64 = 1e-9;

/// A weight or length value: exact rational when the weights allow it,
/// binary64 otherwise.
#[derive(Debug, Clone, Copy)]
pub enum Cost {
    Exact(Rational64),
    Real(f64),
}

impl Cost {
    pub fn integer(n: i64) -> Cost {
        Cost::Exact(Rational64::from_integer(n))
    }

    pub fn zero() -> Cost {
        Cost::integer(0)
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Cost::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Cost::Real(x) => x,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Cost::Exact(_))
    }

    /// The integer value, if this is an exact integer.
    pub fn as_integer(self) -> Option<i64> {
        match self {
            Cost::Exact(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn is_negative(self) -> bool {
        match self {
            Cost::Exact(r) => r < Rational64::zero(),
            Cost::Real(x) => x < 0.0,
        }
    }

    pub fn scale(self, c: Cost) -> Cost {
        match (self, c) {
            (Cost::Exact(a), Cost::Exact(b)) => Cost::Exact(a * b),
            (a, b) => Cost::Real(a.to_f64() * b.to_f64()),
        }
    }

    pub(crate) fn within(self, radius: f64) -> bool {
        self.to_f64() <= radius + TOLERANCE
    }
}

impl From<i64> for Cost {
    fn from(n: i64) -> Self {
        Cost::integer(n)
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        match (self, rhs) {
            (Cost::Exact(a), Cost::Exact(b)) => Cost::Exact(a + b),
            (a, b) => Cost::Real(a.to_f64() + b.to_f64()),
        }
    }
}

impl Sub for Cost {
    type Output = Cost;

    fn sub(self, rhs: Cost) -> Cost {
        match (self, rhs) {
            (Cost::Exact(a), Cost::Exact(b)) => Cost::Exact(a - b),
            (a, b) => Cost::Real(a.to_f64() - b.to_f64()),
        }
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cost::Exact(a), Cost::Exact(b)) => a.cmp(b),
            (a, b) => a.to_f64().total_cmp(&b.to_f64()),
        }
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Cost {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cost {}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Exact(r) if r.is_integer() => write!(f, "{}", r.to_integer()),
            Cost::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Cost::Real(x) => write!(f, "{x}"),
        }
    }
}

/// Weight function on 1-based generator indices.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightFunction {
    /// `F(n) = values[n - 1]`; undefined past the end of the list.
    Explicit(Vec<Cost>),
    /// `F(n) = a n + b`.
    Affine { a: Cost, b: Cost },
    /// `F(n) = base(n) + n`.
    Staircase(Box<WeightFunction>),
}

impl WeightFunction {
    pub fn explicit(values: Vec<Cost>) -> Result<Self> {
        let w = WeightFunction::Explicit(values);
        w.validate()?;
        Ok(w)
    }

    pub fn explicit_integers(values: &[i64]) -> Result<Self> {
        Self::explicit(values.iter().map(|&v| Cost::integer(v)).collect())
    }

    pub fn affine(a: Cost, b: Cost) -> Result<Self> {
        let w = WeightFunction::Affine { a, b };
        w.validate()?;
        Ok(w)
    }

    /// `F(n) = n`.
    pub fn identity() -> Self {
        WeightFunction::Affine {
            a: Cost::integer(1),
            b: Cost::integer(0),
        }
    }

    /// `F(n) = c` for every `n`.
    pub fn constant(c: Cost) -> Result<Self> {
        Self::affine(Cost::zero(), c)
    }

    pub fn staircase_of(base: WeightFunction) -> Self {
        WeightFunction::Staircase(Box::new(base))
    }

    /// Rejects negative or non-finite values.
    pub fn validate(&self) -> Result<()> {
        let bad = |c: &Cost| c.is_negative() || !c.to_f64().is_finite();
        match self {
            WeightFunction::Explicit(values) => {
                if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| bad(v)) {
                    return Err(Error::InvalidWeight(format!("F({}) = {v} is not a finite value >= 0", i + 1)));
                }
                Ok(())
            }
            WeightFunction::Affine { a, b } => {
                if bad(a) || bad(b) {
                    return Err(Error::InvalidWeight(format!(
                        "affine coefficients must be finite and >= 0, got a = {a}, b = {b}"
                    )));
                }
                Ok(())
            }
            WeightFunction::Staircase(base) => base.validate(),
        }
    }

    /// `F(n)`, or `None` where the function is undefined.
    pub fn eval(&self, n: usize) -> Option<Cost> {
        if n == 0 {
            return None;
        }
        match self {
            WeightFunction::Explicit(values) => values.get(n - 1).copied(),
            WeightFunction::Affine { a, b } => Some(a.scale(Cost::integer(n as i64)) + *b),
            WeightFunction::Staircase(base) => Some(base.eval(n)? + Cost::integer(n as i64)),
        }
    }

    /// Number of indices where `F` is defined, `None` if unbounded.
    pub fn defined_len(&self) -> Option<usize> {
        match self {
            WeightFunction::Explicit(values) => Some(values.len()),
            WeightFunction::Affine { .. } => None,
            WeightFunction::Staircase(base) => base.defined_len(),
        }
    }

    /// An upper bound on the indices `n` with `F(n) <= radius`, `None` when
    /// infinitely many indices qualify.
    pub fn index_bound(&self, radius: f64) -> Option<usize> {
        match self {
            WeightFunction::Explicit(values) => Some(values.len()),
            WeightFunction::Affine { a, b } => {
                let (a, b) = (a.to_f64(), b.to_f64());
                if a > 0.0 {
                    Some((((radius + TOLERANCE - b) / a).floor().max(0.0)) as usize)
                } else if b <= radius + TOLERANCE {
                    None
                } else {
                    Some(0)
                }
            }
            WeightFunction::Staircase(base) => {
                let own = (radius + TOLERANCE).floor().max(0.0) as usize;
                Some(base.defined_len().map_or(own, |l| l.min(own)))
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        match self {
            WeightFunction::Explicit(values) => values.iter().all(|v| v.is_exact()),
            WeightFunction::Affine { a, b } => a.is_exact() && b.is_exact(),
            WeightFunction::Staircase(base) => base.is_exact(),
        }
    }

    /// Whether every value lies in `Z_+`.
    pub fn is_integer_valued(&self) -> bool {
        match self {
            WeightFunction::Explicit(values) => values.iter().all(|v| v.as_integer().is_some()),
            WeightFunction::Affine { a, b } => a.as_integer().is_some() && b.as_integer().is_some(),
            WeightFunction::Staircase(base) => base.is_integer_valued(),
        }
    }

    /// Whether `F(n) = 0` for some index in `1..=upto` (or any index when `upto` is `None`).
    pub fn has_zero(&self, upto: Option<usize>) -> bool {
        match self {
            WeightFunction::Explicit(values) => values
                .iter()
                .take(upto.unwrap_or(usize::MAX))
                .any(|v| v.to_f64() == 0.0),
            WeightFunction::Affine { a, b } => b.to_f64() == 0.0 && (a.to_f64() == 0.0),
            WeightFunction::Staircase(_) => false,
        }
    }

    /// `c F`.
    pub fn scaled(&self, c: Cost) -> WeightFunction {
        match self {
            WeightFunction::Explicit(values) => WeightFunction::Explicit(values.iter().map(|v| v.scale(c)).collect()),
            WeightFunction::Affine { a, b } => WeightFunction::Affine {
                a: a.scale(c),
                b: b.scale(c),
            },
            WeightFunction::Staircase(_) => WeightFunction::Explicit(
                (1..=self.defined_len().unwrap_or(0))
                    .map(|n| self.eval(n).unwrap().scale(c))
                    .collect(),
            ),
        }
    }

    /// Cost of a word of generator indices, `None` if some index is undefined.
    pub fn word_cost(&self, word: &[usize]) -> Option<Cost> {
        word.iter().try_fold(Cost::zero(), |acc, &n| Some(acc + self.eval(n)?))
    }
}
