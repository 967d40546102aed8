//! Compositions: finite sequences of positive integers.
//!
//! A composition indexes a monomial quasisymmetric function `M_α`. The empty
//! composition is a legal value and indexes the constant `M_∅ = 1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A tuple of positive integers.
///
/// Ordering is the lexicographic order used for leading terms: `∅` is the
/// least element, the first differing part decides, and a proper prefix is
/// smaller than any of its extensions.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Composition(Vec<usize>);

impl Composition {
    /// Builds a composition, rejecting zero parts.
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart(parts));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// Composition with a single part. Panics on zero.
    pub fn single(part: usize) -> Self {
        assert!(part > 0, "composition parts must be positive");
        Composition(vec![part])
    }

    /// Caller guarantees every part is positive.
    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Lexicographic comparison.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }

    /// `α ∗ β`: the parts of `self` followed by the parts of `other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.0);
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    /// `α ∔ β`: coordinatewise sum, the shorter composition padded by nothing.
    pub fn dotplus(&self, other: &Self) -> Self {
        let (long, short) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut parts = long.0.clone();
        for (p, q) in parts.iter_mut().zip(&short.0) {
            *p += q;
        }
        Composition(parts)
    }

    pub fn reverse(&self) -> Self {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// `(k) ∗ self`.
    pub fn prepend(&self, part: usize) -> Self {
        assert!(part > 0, "composition parts must be positive");
        let mut parts = Vec::with_capacity(self.len() + 1);
        parts.push(part);
        parts.extend_from_slice(&self.0);
        Composition(parts)
    }

    /// Drops the first part; `None` for `∅`.
    pub fn tail(&self) -> Option<Self> {
        if self.0.is_empty() {
            None
        } else {
            Some(Composition(self.0[1..].to_vec()))
        }
    }

    /// Drops the last part; `None` for `∅`.
    pub fn init(&self) -> Option<Self> {
        if self.0.is_empty() {
            None
        } else {
            Some(Composition(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// Digit-string form such as `232`, available when every part is a single digit.
    pub fn compact(&self) -> Option<String> {
        if self.0.iter().all(|&p| p < 10) {
            Some(self.0.iter().map(|&p| char::from(b'0' + p as u8)).collect())
        } else {
            None
        }
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `(1,2,3)`, `()` and the digit-string form `123`.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::ParseComposition(s.to_string());
        if let Some(inner) = s.strip_prefix('(') {
            let inner = inner.strip_suffix(')').ok_or_else(bad)?.trim();
            if inner.is_empty() {
                return Ok(Composition::empty());
            }
            let parts = inner
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            return Composition::new(parts);
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        Composition::new(s.bytes().map(|b| (b - b'0') as usize).collect())
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Composition::new(parts).map_err(serde::de::Error::custom)
    }
}

#[macro_export]
macro_rules! comp {
    () => {
        $crate::composition::Composition::empty()
    };
    ($($p:expr),+ $(,)?) => {
        $crate::composition::Composition::new(vec![$($p),+]).expect("positive parts")
    };
}
