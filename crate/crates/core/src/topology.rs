//! Cylinders, effective open sets and staged acceptors.
//!
//! An effective open set is given by a generator that may emit one cylinder
//! per stage. A staged acceptor semi-decides an index property; at stage `t`
//! the oracle procedure compares inputs `m < t` and grants the acceptor `t`
//! steps.

use serde::Serialize;

use crate::class::{extends_check, EffectiveClass, FunctionIndex};
use crate::ec::unpair;
use crate::error::Result;
use crate::word::FiniteWord;

/// Where a word sits in an open set's enumeration, when the open can say.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lookup {
    Unsupported,
    NeverEmitted,
    At(u64),
}

pub trait EffectiveOpen {
    /// Cylinder emitted at stage `t`, if any.
    fn emitted(&self, t: u64) -> Result<Option<FiniteWord>>;

    /// Stage at which exactly `w` is emitted. Must agree with [`Self::emitted`].
    fn lookup(&self, _w: &FiniteWord) -> Result<Lookup> {
        Ok(Lookup::Unsupported)
    }
}

impl<T: EffectiveOpen + ?Sized> EffectiveOpen for std::rc::Rc<T> {
    fn emitted(&self, t: u64) -> Result<Option<FiniteWord>> {
        (**self).emitted(t)
    }

    fn lookup(&self, w: &FiniteWord) -> Result<Lookup> {
        (**self).lookup(w)
    }
}

/// Emits `words[t]` at stage `t`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ListOpen {
    pub words: Vec<FiniteWord>,
}

impl ListOpen {
    pub fn new(words: Vec<FiniteWord>) -> Self {
        ListOpen { words }
    }
}

impl EffectiveOpen for ListOpen {
    fn emitted(&self, t: u64) -> Result<Option<FiniteWord>> {
        Ok(usize::try_from(t).ok().and_then(|t| self.words.get(t)).cloned())
    }

    fn lookup(&self, w: &FiniteWord) -> Result<Lookup> {
        Ok(match self.words.iter().position(|x| x == w) {
            Some(t) => Lookup::At(t as u64),
            None => Lookup::NeverEmitted,
        })
    }
}

/// Cylinders emitted during stages `0..t`.
pub fn enumerate(open: &dyn EffectiveOpen, t: u64) -> Result<Vec<FiniteWord>> {
    let mut out = Vec::new();
    for s in 0..t {
        if let Some(w) = open.emitted(s)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// Least `q` such that a cylinder emitted before stage `t` equals `u↾q`.
pub fn covered_prefix_length(u: &FiniteWord, open: &dyn EffectiveOpen, t: u64) -> Result<Option<u64>> {
    let mut scan = false;
    for q in 0..=u.len() {
        match open.lookup(&u.truncate(q))? {
            Lookup::At(s) if s < t => return Ok(Some(q as u64)),
            Lookup::At(_) | Lookup::NeverEmitted => {}
            Lookup::Unsupported => {
                scan = true;
                break;
            }
        }
    }
    if !scan {
        return Ok(None);
    }
    let mut best: Option<u64> = None;
    for s in 0..t {
        if let Some(w) = open.emitted(s)? {
            if w.is_prefix_of(u) {
                let q = w.len() as u64;
                best = Some(best.map_or(q, |b| b.min(q)));
                if q == 0 {
                    break;
                }
            }
        }
    }
    Ok(best)
}

/// `true` certifies `[u] ⊆ U`; `false` only means not within `t` stages.
pub fn word_in_open(u: &FiniteWord, open: &dyn EffectiveOpen, t: u64) -> Result<bool> {
    Ok(covered_prefix_length(u, open, t)?.is_some())
}

/// Position of `w` in the enumeration of all finite words by weight
/// `|w| + Σ w_j`. Weight `s ≥ 1` words correspond to compositions of `s`
/// and occupy ranks `2^{s-1} .. 2^s`. Saturates at `u64::MAX`.
pub fn word_rank(w: &FiniteWord) -> u64 {
    let weight = w.iter().try_fold(w.len() as u64, |acc, &a| acc.checked_add(a));
    let weight = match weight {
        Some(0) => return 0,
        Some(s) if s <= 64 => s,
        _ => return u64::MAX,
    };
    // bit (c - 1) marks a cut after partial sum c
    let mut bits = 0u64;
    let mut partial = 0u64;
    for &a in &w[..w.len() - 1] {
        partial += a + 1;
        bits |= 1 << (partial - 1);
    }
    (1u64 << (weight - 1)).saturating_add(bits)
}

/// Inverse of [`word_rank`] below the saturation point.
pub fn word_unrank(t: u64) -> FiniteWord {
    if t == 0 {
        return FiniteWord::empty();
    }
    let weight = 64 - u64::from(t.leading_zeros());
    let bits = t - (1 << (weight - 1));
    let mut out = Vec::new();
    let mut part = 0u64;
    for c in 1..weight {
        part += 1;
        if bits & (1 << (c - 1)) != 0 {
            out.push(part - 1);
            part = 0;
        }
    }
    out.push(part);
    FiniteWord::new(out)
}

pub trait StagedAcceptor {
    /// Monotone in `stage`.
    fn accept_by(&self, i: FunctionIndex, stage: u64) -> Result<bool>;
}

/// Accepts `f_i` once one of the first `t` listed cylinders is a prefix of it.
pub struct CylinderAcceptor<'a> {
    class: &'a dyn EffectiveClass,
    cylinders: Vec<FiniteWord>,
}

pub fn cylinder_acceptor(class: &dyn EffectiveClass, cylinders: Vec<FiniteWord>) -> CylinderAcceptor<'_> {
    CylinderAcceptor { class, cylinders }
}

impl CylinderAcceptor<'_> {
    pub fn cylinders(&self) -> &[FiniteWord] {
        &self.cylinders
    }

    /// Ground truth: does `f_i` extend some listed cylinder?
    pub fn member(&self, i: FunctionIndex) -> Result<bool> {
        self.accept_by(i, self.cylinders.len() as u64)
    }
}

impl StagedAcceptor for CylinderAcceptor<'_> {
    fn accept_by(&self, i: FunctionIndex, stage: u64) -> Result<bool> {
        let t = usize::try_from(stage).unwrap_or(usize::MAX).min(self.cylinders.len());
        for v in &self.cylinders[..t] {
            if extends_check(self.class, i, v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Classification {
    /// `f_j(at) ≠ oracle(at)`
    Rejected { at: u64 },
    Accepted { stage: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OracleVerdict {
    /// `classification[j]` for every `j ≤ k`.
    Accept { stage: u64, classification: Vec<Classification> },
    NoVerdictYet { unclassified: Vec<FunctionIndex> },
}

/// Semi-decides `A` for the function behind `oracle`, given `k ≥ K_C` of it.
/// Runs stages `0..=stage_budget`.
pub fn oracle_semidecide(
    acceptor: &dyn StagedAcceptor,
    class: &dyn EffectiveClass,
    oracle: &dyn Fn(u64) -> Result<u64>,
    k: FunctionIndex,
    stage_budget: u64,
) -> Result<OracleVerdict> {
    let mut state: Vec<(FunctionIndex, Option<Classification>)> = k.up_to().map(|j| (j, None)).collect();
    for t in 0..=stage_budget {
        let answer = match t.checked_sub(1) {
            Some(m) => Some((m, oracle(m)?)),
            None => None,
        };
        let mut open = 0usize;
        for (j, slot) in state.iter_mut().filter(|(_, c)| c.is_none()) {
            if let Some((m, y)) = answer {
                if class.evaluate(*j, m)? != y {
                    *slot = Some(Classification::Rejected { at: m });
                    continue;
                }
            }
            if acceptor.accept_by(*j, t)? {
                *slot = Some(Classification::Accepted { stage: t });
            } else {
                open += 1;
            }
        }
        if open == 0 {
            let classification = state.into_iter().map(|(_, c)| c.expect("classified")).collect();
            return Ok(OracleVerdict::Accept { stage: t, classification });
        }
    }
    Ok(OracleVerdict::NoVerdictYet {
        unclassified: state.into_iter().filter(|(_, c)| c.is_none()).map(|(j, _)| j).collect(),
    })
}

/// Cantor-dovetailed union of `opens(0), opens(1), …`.
pub struct DovetailUnion<F> {
    opens: F,
}

impl<F, O> DovetailUnion<F>
where
    F: Fn(u64) -> O,
    O: EffectiveOpen,
{
    pub fn new(opens: F) -> Self {
        DovetailUnion { opens }
    }
}

impl<F, O> EffectiveOpen for DovetailUnion<F>
where
    F: Fn(u64) -> O,
    O: EffectiveOpen,
{
    fn emitted(&self, t: u64) -> Result<Option<FiniteWord>> {
        let (a, b) = unpair(u128::from(t));
        (self.opens)(a as u64).emitted(b as u64)
    }
}
