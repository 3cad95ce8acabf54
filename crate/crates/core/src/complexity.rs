//! `K_C` on finite words: the least index whose function extends the word.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::class::{
    equal_functions, extends_check, require_decidable_equality, EffectiveClass, Equality,
    FunctionIndex,
};
use crate::error::{Error, Result};
use crate::word::FiniteWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PrefixComplexity {
    /// Exact: every smaller index was checked.
    Exact(FunctionIndex),
    /// No index up to the bound extends the word, so `K_C(v) > bound`.
    ExceedsBound,
}

impl PrefixComplexity {
    pub fn exact(self) -> Option<FunctionIndex> {
        match self {
            PrefixComplexity::Exact(i) => Some(i),
            PrefixComplexity::ExceedsBound => None,
        }
    }
}

/// Least `i ≤ search_bound` with `f_i` extending `v`.
pub fn prefix_complexity(
    class: &dyn EffectiveClass,
    v: &FiniteWord,
    search_bound: FunctionIndex,
) -> Result<PrefixComplexity> {
    for i in search_bound.up_to() {
        if extends_check(class, i, v)? {
            return Ok(PrefixComplexity::Exact(i));
        }
    }
    Ok(PrefixComplexity::ExceedsBound)
}

/// Lazily walks `K_C(f_i↾0), K_C(f_i↾1), …`.
///
/// The sequence is nondecreasing, so each step resumes the search from the
/// previous minimum, and it never passes `i` itself.
pub struct ProfileWalker<'a> {
    class: &'a dyn EffectiveClass,
    target: FunctionIndex,
    prefix: FiniteWord,
    current: FunctionIndex,
    started: bool,
}

impl<'a> ProfileWalker<'a> {
    pub fn new(class: &'a dyn EffectiveClass, target: FunctionIndex) -> Self {
        ProfileWalker {
            class,
            target,
            prefix: FiniteWord::empty(),
            current: FunctionIndex::ZERO,
            started: false,
        }
    }

    /// Number of prefix lengths whose complexity has been computed.
    pub fn lengths_checked(&self) -> u64 {
        if self.started {
            self.prefix.len() as u64 + 1
        } else {
            0
        }
    }

    /// The prefix consumed so far.
    pub fn prefix(&self) -> &FiniteWord {
        &self.prefix
    }

    pub fn next_value(&mut self) -> Result<FunctionIndex> {
        if !self.started {
            self.started = true;
            return Ok(FunctionIndex::ZERO);
        }
        let n = self.prefix.len() as u64;
        let a = self.class.evaluate(self.target, n)?;
        self.prefix.push(a);
        let mut j = self.current;
        while j <= self.target {
            let ok = if j == self.current {
                self.class.evaluate(j, n)? == a
            } else {
                extends_check(self.class, j, &self.prefix)?
            };
            if ok {
                self.current = j;
                return Ok(j);
            }
            j = j.next();
        }
        Err(Error::SearchExhausted(format!(
            "f_{} does not extend its own prefix; the class is not deterministic",
            self.target
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    pub index: FunctionIndex,
    /// `values[n] = K_C(f_index↾n)` for `n = 0..=n_max`.
    pub values: Vec<FunctionIndex>,
}

impl ComplexityProfile {
    pub fn is_nondecreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// Length from which the profile is constant.
    pub fn stable_from(&self) -> usize {
        let last = self.values.last().copied();
        self.values
            .iter()
            .rposition(|&v| Some(v) != last)
            .map_or(0, |p| p + 1)
    }
}

pub fn complexity_profile(
    class: &dyn EffectiveClass,
    i: FunctionIndex,
    n_max: u64,
) -> Result<ComplexityProfile> {
    let mut walker = ProfileWalker::new(class, i);
    let values = (0..=n_max)
        .map(|_| walker.next_value())
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexityProfile { index: i, values })
}

/// `K_C(f_i)`: the least index of the same function. Needs decidable equality.
pub fn function_complexity(class: &dyn EffectiveClass, i: FunctionIndex) -> Result<FunctionIndex> {
    require_decidable_equality(class)?;
    for j in i.up_to() {
        if equal_functions(class, i, j, 0)? == Equality::Equal {
            return Ok(j);
        }
    }
    unreachable!("f_i equals itself")
}

/// `C_k^p = { u ∈ ℕ^p : K_C(u) ≤ k }`, computed as the length-`p` prefixes
/// of `f_0, …, f_k`.
pub fn class_points(
    class: &dyn EffectiveClass,
    k: FunctionIndex,
    p: u64,
) -> Result<BTreeSet<FiniteWord>> {
    k.up_to().map(|j| class.prefix_word(j, p)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassFunctions {
    /// Least index of each distinct function among `f_0, …, f_k`.
    pub representatives: Vec<FunctionIndex>,
    /// Set when deduplication compared values only up to a horizon.
    pub horizon_limited: bool,
}

/// `C_k = { f : K_C(f) ≤ k }` as minimal-index representatives.
pub fn class_functions(
    class: &dyn EffectiveClass,
    k: FunctionIndex,
    horizon: u64,
) -> Result<ClassFunctions> {
    let exact = class.capabilities().decidable_equality;
    let mut representatives: Vec<FunctionIndex> = Vec::new();
    for j in k.up_to() {
        let mut duplicate = false;
        for &r in &representatives {
            match equal_functions(class, r, j, horizon)? {
                Equality::Equal | Equality::UnknownBeyondHorizon => {
                    duplicate = true;
                    break;
                }
                Equality::DifferAt(_) => {}
            }
        }
        if !duplicate {
            representatives.push(j);
        }
    }
    Ok(ClassFunctions {
        representatives,
        horizon_limited: !exact,
    })
}
