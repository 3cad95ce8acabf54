//! Computably enumerable classes of total functions `{f_i : i ∈ ℕ}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::FiniteWord;

/// An index `i` naming `f_i` in a class's numbering.
///
/// Indices are only meaningful relative to a class instance. They are
/// 128-bit because codes of short words grow doubly exponentially under the
/// eventually-constant encoding.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FunctionIndex(pub u128);

impl FunctionIndex {
    pub const ZERO: FunctionIndex = FunctionIndex(0);

    pub fn value(self) -> u128 {
        self.0
    }

    /// Indices `0..=self`.
    pub fn up_to(self) -> impl Iterator<Item = FunctionIndex> {
        (0..=self.0).map(FunctionIndex)
    }

    pub fn next(self) -> FunctionIndex {
        FunctionIndex(self.0 + 1)
    }
}

impl From<u128> for FunctionIndex {
    fn from(v: u128) -> Self {
        FunctionIndex(v)
    }
}

impl From<u64> for FunctionIndex {
    fn from(v: u64) -> Self {
        FunctionIndex(v as u128)
    }
}

impl fmt::Display for FunctionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for FunctionIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .parse::<u128>()
            .map(FunctionIndex)
            .map_err(|e| Error::InvalidArgument(format!("bad index `{s}`: {e}")))
    }
}

/// Declared, trusted metadata. Neither flag is itself decidable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Capabilities {
    pub decidable_equality: bool,
    pub dense: bool,
}

/// Outcome of comparing two class members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "at", rename_all = "snake_case")]
pub enum Equality {
    Equal,
    DifferAt(u64),
    UnknownBeyondHorizon,
}

/// A c.e. class: a uniformly computable numbering of total functions.
///
/// Implementations must be deterministic and must never return a wrong
/// value; resource truncation surfaces as [`Error::BudgetExhausted`].
pub trait EffectiveClass {
    fn id(&self) -> &str;

    fn capabilities(&self) -> Capabilities;

    /// `f_i(n)`.
    fn evaluate(&self, i: FunctionIndex, n: u64) -> Result<u64>;

    /// `f_i↾n`. Classes with a cheaper bulk path override this.
    fn prefix_word(&self, i: FunctionIndex, n: u64) -> Result<FiniteWord> {
        (0..n).map(|m| self.evaluate(i, m)).collect()
    }

    /// Exact extensional comparison, available only when the class declares
    /// decidable equality.
    fn exact_equality(&self, _i: FunctionIndex, _j: FunctionIndex) -> Option<Result<Equality>> {
        None
    }

    /// An explicit member extending `u`, for classes that can construct one.
    fn extension_witness(&self, _u: &FiniteWord) -> Option<Result<FunctionIndex>> {
        None
    }
}

pub fn evaluate(class: &dyn EffectiveClass, i: FunctionIndex, n: u64) -> Result<u64> {
    class.evaluate(i, n)
}

pub fn prefix_word(class: &dyn EffectiveClass, i: FunctionIndex, n: u64) -> Result<FiniteWord> {
    class.prefix_word(i, n)
}

/// Does `f_i` extend `v`? Stops at the first disagreement.
pub fn extends_check(class: &dyn EffectiveClass, i: FunctionIndex, v: &FiniteWord) -> Result<bool> {
    for (n, &a) in v.iter().enumerate() {
        if class.evaluate(i, n as u64)? != a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compare `f_i` and `f_j`. Exact when the class has decidable equality;
/// otherwise pointwise on `0..horizon`, hedging when no difference is seen.
pub fn equal_functions(
    class: &dyn EffectiveClass,
    i: FunctionIndex,
    j: FunctionIndex,
    horizon: u64,
) -> Result<Equality> {
    if i == j {
        return Ok(Equality::Equal);
    }
    if class.capabilities().decidable_equality {
        if let Some(verdict) = class.exact_equality(i, j) {
            return verdict;
        }
    }
    for n in 0..horizon {
        if class.evaluate(i, n)? != class.evaluate(j, n)? {
            return Ok(Equality::DifferAt(n));
        }
    }
    Ok(Equality::UnknownBeyondHorizon)
}

pub(crate) fn require_dense(class: &dyn EffectiveClass) -> Result<()> {
    if class.capabilities().dense {
        Ok(())
    } else {
        Err(Error::NotCapable {
            class: class.id().to_string(),
            capability: "dense",
        })
    }
}

pub(crate) fn require_decidable_equality(class: &dyn EffectiveClass) -> Result<()> {
    if class.capabilities().decidable_equality {
        Ok(())
    } else {
        Err(Error::NotCapable {
            class: class.id().to_string(),
            capability: "decidable_equality",
        })
    }
}

/// Look up a built-in class by its CLI id.
pub fn class_by_id(id: &str) -> Result<Box<dyn EffectiveClass>> {
    match id {
        "ec" => Ok(Box::new(crate::ec::EcClass)),
        "pr" => Ok(Box::new(crate::pr::PrClass::default())),
        other => Err(Error::InvalidArgument(format!(
            "unknown class `{other}` (expected `ec` or `pr`)"
        ))),
    }
}
