use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A finite sequence of naturals `(v_0, …, v_{n-1})`.
///
/// A word also names its cylinder `[v]`, the set of all functions whose
/// first `n` values are `v`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteWord(Vec<u64>);

impl FiniteWord {
    pub fn new(entries: Vec<u64>) -> Self {
        FiniteWord(entries)
    }

    pub fn empty() -> Self {
        FiniteWord(Vec::new())
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }

    /// True when `self` is a prefix of (or equal to) `other`, i.e. `[other] ⊆ [self]`.
    pub fn is_prefix_of(&self, other: &FiniteWord) -> bool {
        other.0.starts_with(&self.0)
    }

    /// The first `n` entries, or the whole word when it is shorter.
    pub fn truncate(&self, n: usize) -> FiniteWord {
        FiniteWord(self.0[..n.min(self.0.len())].to_vec())
    }

    /// `self · a`
    pub fn extended(&self, a: u64) -> FiniteWord {
        let mut v = self.0.clone();
        v.push(a);
        FiniteWord(v)
    }

    pub fn push(&mut self, a: u64) {
        self.0.push(a);
    }
}

impl Deref for FiniteWord {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for FiniteWord {
    fn from(v: Vec<u64>) -> Self {
        FiniteWord(v)
    }
}

impl<const N: usize> From<[u64; N]> for FiniteWord {
    fn from(v: [u64; N]) -> Self {
        FiniteWord(v.to_vec())
    }
}

impl FromIterator<u64> for FiniteWord {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        FiniteWord(iter.into_iter().collect())
    }
}

/// Comma-separated naturals; the empty string is the empty word.
impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, a) in self.0.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for FiniteWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(FiniteWord::empty());
        }
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::InvalidArgument(format!("bad word entry `{part}`: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(FiniteWord)
    }
}
