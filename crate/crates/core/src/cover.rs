//! Covers `A = C ∩ ⋃_n ([v_n] ∩ A_{C,h_n})` of semi-decidable properties.
//!
//! From a staged acceptor we build the opens `U_k` of words that certify
//! acceptance for every function of complexity at most `k`, pick cylinders
//! `v` from `U_{k+1}` and synthesize the breakpoints of
//! `h(p) = k + min{ i ≥ 1 : p ≤ p_i }` lazily. Membership is then
//! semi-decided from an index by scanning components.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::class::{extends_check, EffectiveClass, FunctionIndex};
use crate::complexity::{class_functions, class_points, prefix_complexity, PrefixComplexity, ProfileWalker};
use crate::error::{Error, Result};
use crate::order::ComputableOrder;
use crate::topology::{
    covered_prefix_length, oracle_semidecide, word_in_open, word_rank, word_unrank, Classification,
    CylinderAcceptor, DovetailUnion, EffectiveOpen, ListOpen, Lookup, OracleVerdict, StagedAcceptor,
};
use crate::word::FiniteWord;

/// `U_k`: words `σ` on which the staged oracle procedure with bound `k`,
/// reading answers from `σ` and limited to `|σ|` stages, classifies every
/// `j ≤ k` and accepts at least one of them. Emits the minimal such words,
/// `σ` at stage `word_rank(σ)`.
pub struct CertifiedOpen<'a> {
    class: &'a dyn EffectiveClass,
    acceptor: &'a dyn StagedAcceptor,
    k: FunctionIndex,
    cache: RefCell<HashMap<FiniteWord, bool>>,
}

pub fn build_uniform_opens<'a>(
    class: &'a dyn EffectiveClass,
    acceptor: &'a dyn StagedAcceptor,
    k: u64,
) -> CertifiedOpen<'a> {
    CertifiedOpen {
        class,
        acceptor,
        k: FunctionIndex::from(k),
        cache: RefCell::new(HashMap::new()),
    }
}

impl CertifiedOpen<'_> {
    pub fn certifies(&self, sigma: &FiniteWord) -> Result<bool> {
        if let Some(&known) = self.cache.borrow().get(sigma) {
            return Ok(known);
        }
        let oracle = |m: u64| Ok(sigma[m as usize]);
        let verdict = oracle_semidecide(self.acceptor, self.class, &oracle, self.k, sigma.len() as u64)?;
        let certified = match verdict {
            OracleVerdict::Accept { classification, .. } => classification
                .iter()
                .any(|c| matches!(c, Classification::Accepted { .. })),
            OracleVerdict::NoVerdictYet { .. } => false,
        };
        self.cache.borrow_mut().insert(sigma.clone(), certified);
        Ok(certified)
    }

    fn minimal(&self, sigma: &FiniteWord) -> Result<bool> {
        if !self.certifies(sigma)? {
            return Ok(false);
        }
        Ok(sigma.is_empty() || !self.certifies(&sigma.truncate(sigma.len() - 1))?)
    }
}

impl EffectiveOpen for CertifiedOpen<'_> {
    fn emitted(&self, t: u64) -> Result<Option<FiniteWord>> {
        let sigma = word_unrank(t);
        Ok(self.minimal(&sigma)?.then_some(sigma))
    }

    fn lookup(&self, w: &FiniteWord) -> Result<Lookup> {
        let rank = word_rank(w);
        // saturated ranks lie beyond every u64 stage
        if rank == u64::MAX || !self.minimal(w)? {
            return Ok(Lookup::NeverEmitted);
        }
        Ok(Lookup::At(rank))
    }
}

pub trait UniformOpenFamily {
    fn open(&self, k: u64) -> Rc<dyn EffectiveOpen + '_>;

    /// `U_{k+1} ⊆ U_k` for every `k`.
    fn is_monotone(&self) -> bool;
}

/// `k ↦ build_uniform_opens(class, acceptor, k)`, cached.
pub struct CertifiedFamily<'a> {
    class: &'a dyn EffectiveClass,
    acceptor: &'a dyn StagedAcceptor,
    opens: RefCell<HashMap<u64, Rc<CertifiedOpen<'a>>>>,
}

impl<'a> CertifiedFamily<'a> {
    pub fn new(class: &'a dyn EffectiveClass, acceptor: &'a dyn StagedAcceptor) -> Self {
        CertifiedFamily {
            class,
            acceptor,
            opens: RefCell::new(HashMap::new()),
        }
    }

    pub fn certified(&self, k: u64) -> Rc<CertifiedOpen<'a>> {
        self.opens
            .borrow_mut()
            .entry(k)
            .or_insert_with(|| Rc::new(build_uniform_opens(self.class, self.acceptor, k)))
            .clone()
    }
}

impl UniformOpenFamily for CertifiedFamily<'_> {
    fn open(&self, k: u64) -> Rc<dyn EffectiveOpen + '_> {
        self.certified(k)
    }

    fn is_monotone(&self) -> bool {
        false
    }
}

/// Explicit finite opens; `U_k` is empty past the end of the list.
#[derive(Debug, Clone, Default)]
pub struct ListFamily {
    pub opens: Vec<Vec<FiniteWord>>,
    pub monotone: bool,
}

impl UniformOpenFamily for ListFamily {
    fn open(&self, k: u64) -> Rc<dyn EffectiveOpen + '_> {
        let words = usize::try_from(k)
            .ok()
            .and_then(|k| self.opens.get(k))
            .cloned()
            .unwrap_or_default();
        Rc::new(ListOpen::new(words))
    }

    fn is_monotone(&self) -> bool {
        self.monotone
    }
}

/// `U'_k = U_k ∪ U_{k+1} ∪ …`
pub struct Monotonized<F> {
    inner: F,
}

pub fn monotonize<F: UniformOpenFamily>(family: F) -> Monotonized<F> {
    Monotonized { inner: family }
}

impl<F: UniformOpenFamily> UniformOpenFamily for Monotonized<F> {
    fn open(&self, k: u64) -> Rc<dyn EffectiveOpen + '_> {
        if self.inner.is_monotone() {
            return self.inner.open(k);
        }
        let inner = &self.inner;
        Rc::new(DovetailUnion::new(move |a| inner.open(k.saturating_add(a))))
    }

    fn is_monotone(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverBudgets {
    /// Components are drawn from `U_1, …, U_{kmax+1}`.
    pub kmax: u64,
    /// Stages of each `U_{k+1}` scanned for cylinders `v`.
    pub component_stages: u64,
    /// Breakpoints synthesized eagerly per component.
    pub initial_breakpoints: usize,
    /// Most breakpoints a component may grow to on demand.
    pub max_breakpoints: usize,
    /// Truncation `t` passed to `word_in_open`.
    pub stage_budget: u64,
    /// Longest prefix searched for a covering cylinder.
    pub length_budget: u64,
    /// Comparison horizon for classes without decidable equality.
    pub horizon: u64,
}

impl Default for CoverBudgets {
    fn default() -> Self {
        CoverBudgets {
            kmax: 4,
            component_stages: 256,
            initial_breakpoints: 3,
            max_breakpoints: 64,
            stage_budget: 1 << 20,
            length_budget: 32,
            horizon: 64,
        }
    }
}

impl CoverBudgets {
    pub fn doubled(&self) -> Self {
        CoverBudgets {
            kmax: self.kmax * 2,
            component_stages: self.component_stages * 2,
            initial_breakpoints: self.initial_breakpoints,
            max_breakpoints: self.max_breakpoints * 2,
            stage_budget: self.stage_budget.saturating_mul(2),
            length_budget: self.length_budget * 2,
            horizon: self.horizon * 2,
        }
    }
}

/// One step of the breakpoint induction: `p_{i+1}` from `p_1, …, p_i`.
fn next_breakpoint(
    class: &dyn EffectiveClass,
    family: &dyn UniformOpenFamily,
    k: u64,
    v: &FiniteWord,
    points: &[u64],
    budgets: &CoverBudgets,
) -> Result<u64> {
    let i = points.len() as u64;
    let bound = FunctionIndex::from(k + i + 1);
    let indices = if class.capabilities().decidable_equality {
        class_functions(class, bound, budgets.horizon)?.representatives
    } else {
        bound.up_to().collect()
    };
    let open = family.open(k + i + 2);
    let mut p = match points.last() {
        Some(&last) => last + 1,
        None => v.len() as u64,
    };
    'candidates: for j in indices {
        if !extends_check(class, j, v)? {
            continue;
        }
        for (m, &pm) in points.iter().enumerate() {
            let word = class.prefix_word(j, pm)?;
            let bound = FunctionIndex::from(k + m as u64 + 1);
            if prefix_complexity(class, &word, bound)? == PrefixComplexity::ExceedsBound {
                continue 'candidates;
            }
        }
        let prefix = class.prefix_word(j, budgets.length_budget)?;
        match covered_prefix_length(&prefix, &*open, budgets.stage_budget)? {
            Some(q) => p = p.max(q),
            None => {
                return Err(Error::SearchExhausted(format!(
                    "no prefix of f_{j} up to length {} found in U_{} within {} stages",
                    budgets.length_budget,
                    k + i + 2,
                    budgets.stage_budget
                )))
            }
        }
    }
    Ok(p)
}

/// `p_1 < … < p_{i_max}` for the component `(k, v)`; requires `[v] ⊆ U_{k+1}`.
pub fn synthesize_breakpoints(
    class: &dyn EffectiveClass,
    family: &dyn UniformOpenFamily,
    k: u64,
    v: &FiniteWord,
    i_max: usize,
    budgets: &CoverBudgets,
) -> Result<Vec<u64>> {
    let mut points = Vec::with_capacity(i_max);
    while points.len() < i_max {
        let p = next_breakpoint(class, family, k, v, &points, budgets)?;
        points.push(p);
    }
    Ok(points)
}

/// Materialized component as stored in cover files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverComponent {
    pub k: u64,
    pub v: FiniteWord,
    pub breakpoints: Vec<u64>,
    /// Largest length the breakpoints settle, `p_last` (0 if none).
    pub horizon: u64,
}

struct Synthesis<'a> {
    class: &'a dyn EffectiveClass,
    family: &'a dyn UniformOpenFamily,
    budgets: CoverBudgets,
    stalled: Option<String>,
}

/// A cover component whose breakpoints may still grow.
pub struct Component<'a> {
    pub k: u64,
    pub v: FiniteWord,
    points: Vec<u64>,
    synthesis: Option<Synthesis<'a>>,
}

impl<'a> Component<'a> {
    pub fn fixed(record: CoverComponent) -> Result<Self> {
        ComputableOrder::breakpoints(record.k, record.breakpoints.clone())?;
        Ok(Component {
            k: record.k,
            v: record.v,
            points: record.breakpoints,
            synthesis: None,
        })
    }

    pub fn live(
        class: &'a dyn EffectiveClass,
        family: &'a dyn UniformOpenFamily,
        k: u64,
        v: FiniteWord,
        budgets: CoverBudgets,
    ) -> Self {
        Component {
            k,
            v,
            points: Vec::new(),
            synthesis: Some(Synthesis {
                class,
                family,
                budgets,
                stalled: None,
            }),
        }
    }

    pub fn breakpoints(&self) -> &[u64] {
        &self.points
    }

    /// Why the breakpoints stopped growing, if a search ran out of budget.
    pub fn stalled(&self) -> Option<&str> {
        self.synthesis.as_ref().and_then(|s| s.stalled.as_deref())
    }

    /// The order with the breakpoints known so far; exact below the last one.
    pub fn order(&self) -> ComputableOrder {
        ComputableOrder::Breakpoints {
            base: self.k,
            points: self.points.clone(),
        }
    }

    pub fn record(&self) -> CoverComponent {
        CoverComponent {
            k: self.k,
            v: self.v.clone(),
            breakpoints: self.points.clone(),
            horizon: self.points.last().copied().unwrap_or(0),
        }
    }

    /// Grow to `count` breakpoints. `Ok(false)` when budgets or a fixed
    /// record prevent it.
    pub fn ensure_breakpoints(&mut self, count: usize) -> Result<bool> {
        while self.points.len() < count {
            let Some(s) = self.synthesis.as_mut() else {
                return Ok(false);
            };
            if s.stalled.is_some() || self.points.len() >= s.budgets.max_breakpoints {
                return Ok(false);
            }
            match next_breakpoint(s.class, s.family, self.k, &self.v, &self.points, &s.budgets) {
                Ok(p) => self.points.push(p),
                Err(e) if e.is_inconclusive() => {
                    s.stalled = Some(e.to_string());
                    return Ok(false);
                }
                Err(e) => return Err(e),
            }
        }
        Ok(true)
    }

    /// `f_i ∈ A_{C,h}` for this component's order, growing breakpoints only
    /// as far as the walk needs. `None` when they cannot grow far enough.
    pub fn decide_member(&mut self, class: &dyn EffectiveClass, i: FunctionIndex) -> Result<Option<bool>> {
        let i = u64::try_from(i.value()).map_err(|_| Error::Overflow("index too large for an order threshold"))?;
        if i <= self.k + 1 {
            return Ok(Some(true));
        }
        // lengths n ≤ p_need are checked, where h(p_need + 1) = i
        let need = (i - self.k - 1) as usize;
        let mut walker = ProfileWalker::new(class, FunctionIndex::from(i));
        let mut n = 0u64;
        loop {
            let level = loop {
                if let Some(pos) = self.points.iter().position(|&p| n <= p) {
                    break pos + 1;
                }
                if self.points.len() >= need {
                    return Ok(Some(true));
                }
                if !self.ensure_breakpoints(self.points.len() + 1)? {
                    return Ok(None);
                }
            };
            if level > need {
                return Ok(Some(true));
            }
            if walker.next_value()?.value() > u128::from(self.k + level as u64) {
                return Ok(Some(false));
            }
            n += 1;
        }
    }
}

/// Components `(k, v)` for `k ≤ kmax` and `v` emitted by `U_{k+1}` before
/// stage `component_stages`, in diagonal order over `(k, stage)`.
pub fn enumerate_cover<'a>(
    class: &'a dyn EffectiveClass,
    family: &'a dyn UniformOpenFamily,
    budgets: &CoverBudgets,
) -> Result<Vec<Component<'a>>> {
    let mut out = Vec::new();
    let opens: Vec<_> = (0..=budgets.kmax).map(|k| family.open(k + 1)).collect();
    for d in 0..budgets.kmax + budgets.component_stages {
        for k in 0..=budgets.kmax.min(d) {
            let stage = d - k;
            if stage >= budgets.component_stages {
                continue;
            }
            if let Some(v) = opens[k as usize].emitted(stage)? {
                let mut c = Component::live(class, family, k, v, *budgets);
                c.ensure_breakpoints(budgets.initial_breakpoints)?;
                out.push(c);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CoverVerdict {
    Accept { component: usize },
    /// Always budget-limited: the cover is a finite truncation.
    /// `short` counts components whose breakpoints could not grow far enough.
    NoVerdictYet { short: usize },
}

/// Semi-decide membership of `f_i` from the first `budget` components.
pub fn semidecide_from_cover(
    class: &dyn EffectiveClass,
    cover: &mut [Component<'_>],
    i: FunctionIndex,
    budget: usize,
) -> Result<CoverVerdict> {
    let mut short = 0;
    for (n, c) in cover.iter_mut().take(budget).enumerate() {
        if !extends_check(class, i, &c.v)? {
            continue;
        }
        match c.decide_member(class, i)? {
            Some(true) => return Ok(CoverVerdict::Accept { component: n }),
            Some(false) => {}
            None => short += 1,
        }
    }
    Ok(CoverVerdict::NoVerdictYet { short })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub agreements: Vec<FunctionIndex>,
    /// Accepted non-members.
    pub disagreements: Vec<FunctionIndex>,
    /// Members without a verdict, each limited by the cover's truncation.
    pub inconclusive: Vec<FunctionIndex>,
}

/// Replays the cover on `f_0, …, f_bound` against the property's ground truth.
pub fn verify_cover_truncation(
    class: &dyn EffectiveClass,
    property: &CylinderAcceptor<'_>,
    cover: &mut [Component<'_>],
    index_bound: FunctionIndex,
) -> Result<CoverReport> {
    let mut report = CoverReport::default();
    for i in index_bound.up_to() {
        let verdict = match semidecide_from_cover(class, cover, i, usize::MAX) {
            Ok(v) => Some(v),
            Err(e) if e.is_inconclusive() => None,
            Err(e) => return Err(e),
        };
        let member = property.member(i)?;
        match (verdict, member) {
            (Some(CoverVerdict::Accept { .. }), true) => report.agreements.push(i),
            (Some(CoverVerdict::Accept { .. }), false) => report.disagreements.push(i),
            (_, false) => report.agreements.push(i),
            (_, true) => report.inconclusive.push(i),
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub words_checked: usize,
    /// `(i, u)` with `u` in the `i`-th intersection but not seen in `U_{k+i+1}`.
    pub failures: Vec<(usize, FiniteWord)>,
}

/// For each `i ≤ |points|`, every length-`p_i` word in
/// `[v] ∩ C^{p_1}_{k+1} ∩ … ∩ C^{p_i}_{k+i}` lies in `U_{k+i+1}` within
/// `stage_budget` stages.
pub fn check_breakpoint_invariant(
    class: &dyn EffectiveClass,
    family: &dyn UniformOpenFamily,
    k: u64,
    v: &FiniteWord,
    points: &[u64],
    stage_budget: u64,
) -> Result<InvariantCheck> {
    let mut check = InvariantCheck::default();
    for (idx, &p) in points.iter().enumerate() {
        let i = idx + 1;
        let open = family.open(k + i as u64 + 1);
        'words: for u in class_points(class, FunctionIndex::from(k + i as u64), p)? {
            if !v.is_prefix_of(&u) {
                continue;
            }
            for (m, &pm) in points[..idx].iter().enumerate() {
                let bound = FunctionIndex::from(k + m as u64 + 1);
                if prefix_complexity(class, &u.truncate(pm as usize), bound)? == PrefixComplexity::ExceedsBound {
                    continue 'words;
                }
            }
            check.words_checked += 1;
            if !word_in_open(&u, &*open, stage_budget)? {
                check.failures.push((i, u));
            }
        }
    }
    Ok(check)
}
