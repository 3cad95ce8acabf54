use super::builders::eventually_constant;
use super::enumerate::{pr_enumerate, pr_rank};
use super::eval::pr_eval;
use super::PrError;
use crate::class::{Capabilities, EffectiveClass, FunctionIndex};
use crate::error::{Error, Result};
use crate::word::FiniteWord;

pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Unary primitive-recursive terms under the size-ordered numbering.
///
/// Declared dense (see [`eventually_constant`]) but without decidable
/// equality.
#[derive(Debug, Clone, Copy)]
pub struct PrClass {
    pub fuel: u64,
}

impl Default for PrClass {
    fn default() -> Self {
        PrClass { fuel: DEFAULT_FUEL }
    }
}

impl PrClass {
    pub fn with_fuel(fuel: u64) -> Self {
        PrClass { fuel }
    }

    fn run(&self, term: &super::PrTerm, i: FunctionIndex, n: u64) -> Result<u64> {
        pr_eval(term, &[n], self.fuel).map_err(|e| match e {
            PrError::FuelExhausted => Error::BudgetExhausted { index: i, n },
            other => Error::Pr(other),
        })
    }
}

impl EffectiveClass for PrClass {
    fn id(&self) -> &str {
        "pr"
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            decidable_equality: false,
            dense: true,
        }
    }

    fn evaluate(&self, i: FunctionIndex, n: u64) -> Result<u64> {
        let term = pr_enumerate(i)?;
        self.run(&term, i, n)
    }

    fn prefix_word(&self, i: FunctionIndex, n: u64) -> Result<FiniteWord> {
        let term = pr_enumerate(i)?;
        (0..n).map(|m| self.run(&term, i, m)).collect()
    }

    /// Index of the explicit eventually-constant term; fails with
    /// [`Error::Overflow`] once the term is too large to number.
    fn extension_witness(&self, u: &FiniteWord) -> Option<Result<FunctionIndex>> {
        Some(pr_rank(&eventually_constant(u)))
    }
}
